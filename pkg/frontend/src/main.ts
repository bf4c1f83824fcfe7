import { ApiClient } from "./api.js";
import { DashboardModel } from "./model.js";
import { renderTree } from "./tree_view.js";
import { renderCountTable, renderErrors, renderKpList, renderRecommendation } from "./panels.js";
import { parseSequenceInput } from "./counts.js";
import type { SessionFormInput } from "./validate.js";

function byId<T extends HTMLElement>(id: string): T {
    const element = document.getElementById(id);
    if (!element) throw new Error(`missing element #${id}`);
    return element as T;
}

function readSessionForm(): SessionFormInput {
    const shares: SessionFormInput["shares"] = [];
    document.querySelectorAll<HTMLElement>("#share-rows .share-row").forEach((row) => {
        const kp = row.querySelector<HTMLInputElement>(".share-kp")?.value ?? "";
        const value = row.querySelector<HTMLInputElement>(".share-value")?.value ?? "";
        shares.push({ kp, value });
    });
    return {
        sessionId: byId<HTMLInputElement>("session-id").value,
        cessationTime: byId<HTMLInputElement>("session-at").value,
        durationMin: byId<HTMLInputElement>("session-duration").value,
        shares,
    };
}

function addShareRow(): void {
    const row = document.createElement("div");
    row.className = "share-row";
    row.innerHTML =
        '<input class="share-kp" placeholder="KP id">' +
        '<input class="share-value" placeholder="share (0..1]">';
    byId("share-rows").appendChild(row);
}

async function start(): Promise<void> {
    const model = new DashboardModel(new ApiClient(""));

    const treePanel = byId("tree-panel");
    const kpPanel = byId("kp-panel");
    const recommendationPanel = byId("recommendation-panel");
    const sessionErrors = byId("session-errors");
    const whatIfPanel = byId("whatif-panel");

    const selectKp = async (kpId: string) => {
        const selection = await model.select(kpId);
        renderTree(treePanel, selection);
    };

    await model.load();
    renderKpList(kpPanel, model, (kpId) => void selectKp(kpId));
    renderRecommendation(recommendationPanel, model);
    addShareRow();

    byId<HTMLButtonElement>("add-share").onclick = addShareRow;

    byId<HTMLFormElement>("session-form").onsubmit = async (event) => {
        event.preventDefault();
        const submitted = await model.submitSession(readSessionForm());
        renderErrors(sessionErrors, model.sessionErrors, model.lastSubmitError);
        if (submitted) {
            renderRecommendation(recommendationPanel, model);
            if (model.selected) renderTree(treePanel, model.selected);
            byId<HTMLFormElement>("session-form").reset();
            byId("share-rows").replaceChildren();
            addShareRow();
        }
    };

    byId<HTMLFormElement>("whatif-form").onsubmit = async (event) => {
        event.preventDefault();
        const sequence = parseSequenceInput(byId<HTMLInputElement>("whatif-sequence").value);
        const result = await model.whatIf(sequence);
        renderCountTable(whatIfPanel, result);
    };

    const root = model.kps.find((kp) => !kp.bkp);
    if (root) await selectKp(root.id);
}

void start();
