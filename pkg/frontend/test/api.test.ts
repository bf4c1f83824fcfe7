import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

function recordingFetch(status: number, body: unknown, log: string[]) {
    return async (input: string, init?: RequestInit): Promise<Response> => {
        log.push(`${init?.method ?? "GET"} ${input}`);
        return new Response(JSON.stringify(body), { status });
    };
}

describe("ApiClient", () => {
    it("builds encoded endpoint URLs", async () => {
        const log: string[] = [];
        const client = new ApiClient("", recordingFetch(200, {}, log));
        await client.tree("random variable");
        await client.familiarity("SSP", "2025-03-01T12:00:00Z");
        await client.recommendation("min-count");
        expect(log).toEqual([
            "GET /kps/random%20variable/tree",
            "GET /kps/SSP/familiarity?at=2025-03-01T12%3A00%3A00Z",
            "GET /recommendation?policy=min-count",
        ]);
    });

    it("prefixes a base URL", async () => {
        const log: string[] = [];
        const client = new ApiClient("http://127.0.0.1:8787", recordingFetch(200, [], log));
        await client.listKps();
        expect(log).toEqual(["GET http://127.0.0.1:8787/kps"]);
    });

    it("POSTs the replay body", async () => {
        const log: string[] = [];
        const client = new ApiClient("", recordingFetch(200, { rows: [] }, log));
        await client.simulate(["D5"]);
        await client.simulate(null, "min-count");
        expect(log).toEqual(["POST /simulate", "POST /simulate"]);
    });

    it("throws ApiError carrying the machine-readable body", async () => {
        const body = { status: 404, code: "unknown_kp", detail: "unknown knowledge point 'zzz'" };
        const client = new ApiClient("", recordingFetch(404, body, []));
        await expect(client.tree("zzz")).rejects.toSatisfy((error: unknown) => {
            expect(error).toBeInstanceOf(ApiError);
            expect((error as ApiError).body).toEqual(body);
            return true;
        });
    });
});
