import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { DashboardModel } from "../src/model.js";
import { rootBadge } from "../src/format.js";
import {
    AFTER_SESSION_RECOMMENDATION,
    FRESH_RECOMMENDATION,
    KPS,
    REPLAY,
    SSP_ASSESSMENT,
    SSP_TREE,
    familiarityOf,
} from "./fixtures.js";

// Percentages behind the worked example: root 85%, BKPs untouched (the
// familiarity endpoint reports their recorded values, here 0).
const PERCENTAGES: Record<string, number> = {
    SSP: 0.85, SP: 0.8, JPD: 0.8, PM: 0.75, RV: 0.75, PS: 0.7, PD: 0.7, SS: 0.63,
};

interface StubState {
    sessionPosted: boolean;
    requests: string[];
}

/** Serves recorded payloads; switches the recommendation after a session POST. */
function stubFetch(state: StubState) {
    return async (input: string, init?: RequestInit): Promise<Response> => {
        state.requests.push(`${init?.method ?? "GET"} ${input}`);
        const respond = (body: unknown, status = 200) =>
            new Response(JSON.stringify(body), { status });

        if (input === "/kps") return respond(KPS);
        if (input === "/recommendation?policy=min-count") {
            return respond(state.sessionPosted ? AFTER_SESSION_RECOMMENDATION : FRESH_RECOMMENDATION);
        }
        if (input === "/kps/SSP/tree") return respond(SSP_TREE);
        if (input === "/kps/SSP/assessment") return respond(SSP_ASSESSMENT);
        const familiarity = /^\/kps\/([^/]+)\/familiarity$/.exec(input);
        if (familiarity) {
            const kp = decodeURIComponent(familiarity[1]!);
            return respond(familiarityOf(kp, PERCENTAGES[kp] ?? 0));
        }
        if (input === "/sessions" && init?.method === "POST") {
            const body = JSON.parse(String(init.body)) as { session_id: string };
            if (body.session_id === "dup") {
                return respond(
                    { status: 409, code: "conflict", detail: "session 'dup' already recorded" },
                    409,
                );
            }
            state.sessionPosted = true;
            return respond({ appended: body }, 201);
        }
        if (input === "/simulate" && init?.method === "POST") {
            const body = JSON.parse(String(init.body)) as { sequence?: string[] };
            if (body.sequence && body.sequence[0] === "D1") {
                return respond(
                    {
                        status: 422,
                        code: "sequence_invalid",
                        detail: "step 1: 'D1' is not among the optimal documents ['D5', 'D7', 'D8']",
                    },
                    422,
                );
            }
            return respond(REPLAY);
        }
        return respond({ status: 404, code: "http_error", detail: `no stub for ${input}` }, 404);
    };
}

function makeModel() {
    const state: StubState = { sessionPosted: false, requests: [] };
    const model = new DashboardModel(new ApiClient("", stubFetch(state)));
    return { model, state };
}

describe("DashboardModel", () => {
    it("renders the seeded tree with a 76% root badge", async () => {
        const { model } = makeModel();
        await model.load();
        const selection = await model.select("SSP");
        expect(selection.tree.node_count).toBe(18);
        expect(rootBadge(selection.assessment)).toBe("76%");
        expect(selection.assessment.classification).toBe("NotUnderstood");
        // every node has a fetched familiarity entry; none is computed locally
        expect(selection.familiarity.size).toBe(18);
        expect(selection.familiarity.get("SSP")?.percentage).toBe(0.85);
        expect(selection.familiarity.get("Time")?.percentage).toBe(0);
    });

    it("submitting a session refreshes the recommendation panel", async () => {
        const { model } = makeModel();
        await model.load();
        expect(model.recommendation?.documents).toEqual(["D5", "D7", "D8"]);

        const submitted = await model.submitSession({
            sessionId: "live-1",
            cessationTime: "2025-03-01T12:00:00Z",
            durationMin: "120",
            shares: [{ kp: "RV", value: "1.0" }],
        });
        expect(submitted).toBe(true);
        expect(model.sessionErrors).toEqual([]);
        expect(model.recommendation?.documents).toEqual(["D7", "D8"]);
    });

    it("client-side validation blocks the request entirely", async () => {
        const { model, state } = makeModel();
        await model.load();
        const before = state.requests.length;
        const submitted = await model.submitSession({
            sessionId: "x",
            cessationTime: "2025-03-01T12:00:00Z",
            durationMin: "0",
            shares: [{ kp: "RV", value: "1.0" }],
        });
        expect(submitted).toBe(false);
        expect(model.sessionErrors.length).toBeGreaterThan(0);
        expect(state.requests.length).toBe(before); // no POST issued
    });

    it("surfaces a duplicate-session 409 inline with its code", async () => {
        const { model } = makeModel();
        await model.load();
        const submitted = await model.submitSession({
            sessionId: "dup",
            cessationTime: "2025-03-01T12:00:00Z",
            durationMin: "10",
            shares: [{ kp: "RV", value: "1.0" }],
        });
        expect(submitted).toBe(false);
        expect(model.lastSubmitError).toMatch(/^conflict:/);
        // recommendation panel untouched by the failed submission
        expect(model.recommendation?.documents).toEqual(["D5", "D7", "D8"]);
    });

    it("what-if replay reproduces the nine recorded rows", async () => {
        const { model } = makeModel();
        const result = await model.whatIf(["D5", "D8", "D4", "D2", "D7", "D6", "D3", "D1"]);
        expect(result.error).toBeNull();
        expect(result.table?.rows).toHaveLength(9);
        expect(result.table?.rows.map((row) => row.cells)).toEqual(
            REPLAY.rows.map((row) => row.counts),
        );
    });

    it("what-if replay pinpoints the failing step", async () => {
        const { model } = makeModel();
        const result = await model.whatIf(["D1"]);
        expect(result.table).toBeNull();
        expect(result.failingStep).toBe(1);
        expect(result.error).toMatch(/D1/);
    });
});
