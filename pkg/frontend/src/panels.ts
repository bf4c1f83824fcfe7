import type { DashboardModel, WhatIfResult } from "./model.js";
import type { CountTable } from "./counts.js";

/** KP list with per-item selection. */
export function renderKpList(
    container: HTMLElement,
    model: DashboardModel,
    onSelect: (kpId: string) => void,
): void {
    container.replaceChildren();
    const list = document.createElement("ul");
    list.className = "kp-list";
    for (const kp of model.kps) {
        const item = document.createElement("li");
        const button = document.createElement("button");
        button.type = "button";
        button.textContent = kp.bkp ? `${kp.id} (basic)` : kp.id;
        button.title = kp.name;
        button.onclick = () => onSelect(kp.id);
        item.appendChild(button);
        list.appendChild(item);
    }
    container.appendChild(list);
}

/** Recommendation panel fed by GET /recommendation. */
export function renderRecommendation(container: HTMLElement, model: DashboardModel): void {
    container.replaceChildren();
    const heading = document.createElement("h3");
    heading.textContent = "Learn next";
    container.appendChild(heading);
    const docs = model.recommendation?.documents ?? [];
    if (docs.length === 0) {
        const done = document.createElement("p");
        done.textContent = "Everything in the corpus is understood.";
        container.appendChild(done);
        return;
    }
    const list = document.createElement("ol");
    for (const docId of docs) {
        const item = document.createElement("li");
        item.textContent = docId;
        list.appendChild(item);
    }
    container.appendChild(list);
}

export function renderErrors(container: HTMLElement, errors: string[], inlineError: string | null): void {
    container.replaceChildren();
    for (const message of errors) {
        const line = document.createElement("p");
        line.className = "error";
        line.textContent = message;
        container.appendChild(line);
    }
    if (inlineError) {
        const line = document.createElement("p");
        line.className = "error inline-api";
        line.textContent = inlineError;
        container.appendChild(line);
    }
}

/** The what-if count table (rows = steps, columns = documents). */
export function renderCountTable(container: HTMLElement, result: WhatIfResult): void {
    container.replaceChildren();
    if (result.error) {
        const line = document.createElement("p");
        line.className = "error";
        line.textContent = result.failingStep
            ? `Sequence rejected at step ${result.failingStep}: ${result.error}`
            : result.error;
        container.appendChild(line);
        return;
    }
    if (!result.table) return;
    container.appendChild(countTableElement(result.table));
}

export function countTableElement(table: CountTable): HTMLTableElement {
    const element = document.createElement("table");
    element.className = "count-table";
    const head = element.createTHead().insertRow();
    for (const cell of table.header) {
        const th = document.createElement("th");
        th.textContent = cell;
        head.appendChild(th);
    }
    const body = element.createTBody();
    for (const row of table.rows) {
        const tr = body.insertRow();
        if (row.ineffective) tr.className = "ineffective";
        const label = tr.insertCell();
        label.textContent = row.label;
        for (const value of row.cells) {
            const cell = tr.insertCell();
            cell.textContent = String(value);
            if (value === 0) cell.className = "zero";
        }
    }
    return element;
}
