import type {
    ApiErrorBody,
    AssessmentInfo,
    DocumentInfo,
    FamiliarityInfo,
    KnowledgePointInfo,
    RecommendationInfo,
    ReverseInfo,
    SessionPayload,
    SimulationInfo,
    TreeInfo,
} from "./types.js";

export class ApiError extends Error {
    constructor(readonly body: ApiErrorBody) {
        super(body.detail);
    }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Thin typed client; every non-2xx response surfaces its machine code. */
export class ApiClient {
    constructor(
        private readonly baseUrl: string = "",
        private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
    ) {}

    private async request<T>(path: string, init?: RequestInit): Promise<T> {
        const response = await this.fetchImpl(this.baseUrl + path, init);
        const payload = await response.json();
        if (!response.ok) {
            throw new ApiError(payload as ApiErrorBody);
        }
        return payload as T;
    }

    listKps(): Promise<KnowledgePointInfo[]> {
        return this.request("/kps");
    }

    familiarity(kpId: string, at?: string): Promise<FamiliarityInfo> {
        return this.request(`/kps/${encodeURIComponent(kpId)}/familiarity${atQuery(at)}`);
    }

    tree(kpId: string): Promise<TreeInfo> {
        return this.request(`/kps/${encodeURIComponent(kpId)}/tree`);
    }

    reverse(kpId: string): Promise<ReverseInfo> {
        return this.request(`/kps/${encodeURIComponent(kpId)}/reverse`);
    }

    assessment(kpId: string, at?: string): Promise<AssessmentInfo> {
        return this.request(`/kps/${encodeURIComponent(kpId)}/assessment${atQuery(at)}`);
    }

    recommendation(policy: string = "min-count"): Promise<RecommendationInfo> {
        return this.request(`/recommendation?policy=${encodeURIComponent(policy)}`);
    }

    documents(): Promise<DocumentInfo[]> {
        return this.request("/documents");
    }

    submitSession(session: SessionPayload): Promise<unknown> {
        return this.request("/sessions", {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(session),
        });
    }

    simulate(sequence: string[] | null, policy: string = "min-count"): Promise<SimulationInfo> {
        const body = sequence === null ? { policy } : { sequence };
        return this.request("/simulate", {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(body),
        });
    }
}

function atQuery(at?: string): string {
    return at ? `?at=${encodeURIComponent(at)}` : "";
}
