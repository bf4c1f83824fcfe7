import { ApiClient, ApiError } from "./api.js";
import { validateSessionForm, type SessionFormInput } from "./validate.js";
import { buildCountTable, failingStep, type CountTable } from "./counts.js";
import type {
    AssessmentInfo,
    FamiliarityInfo,
    KnowledgePointInfo,
    RecommendationInfo,
    TreeInfo,
} from "./types.js";

export interface SelectedTree {
    tree: TreeInfo;
    assessment: AssessmentInfo;
    familiarity: Map<string, FamiliarityInfo>;
}

export interface WhatIfResult {
    table: CountTable | null;
    error: string | null;
    failingStep: number | null;
}

/**
 * DOM-free dashboard state. All numbers displayed anywhere come from API
 * payloads held here; views only format them.
 */
export class DashboardModel {
    kps: KnowledgePointInfo[] = [];
    recommendation: RecommendationInfo | null = null;
    selected: SelectedTree | null = null;
    sessionErrors: string[] = [];
    lastSubmitError: string | null = null;

    constructor(private readonly api: ApiClient) {}

    async load(): Promise<void> {
        this.kps = await this.api.listKps();
        await this.refreshRecommendation();
    }

    async refreshRecommendation(): Promise<void> {
        this.recommendation = await this.api.recommendation("min-count");
    }

    /** Fetch tree + assessment + per-node familiarity for one KP. */
    async select(kpId: string, at?: string): Promise<SelectedTree> {
        const [tree, assessment] = await Promise.all([
            this.api.tree(kpId),
            this.api.assessment(kpId, at),
        ]);
        const nodes = Object.keys(tree.bkp);
        const familiarity = new Map<string, FamiliarityInfo>();
        const infos = await Promise.all(nodes.map((node) => this.api.familiarity(node, at)));
        infos.forEach((info) => familiarity.set(info.kp, info));
        this.selected = { tree, assessment, familiarity };
        return this.selected;
    }

    /**
     * Validate and submit a session; on success the familiarity,
     * assessment and recommendation panels are refreshed from the server.
     */
    async submitSession(form: SessionFormInput, at?: string): Promise<boolean> {
        this.lastSubmitError = null;
        const result = validateSessionForm(form);
        if (!result.ok) {
            this.sessionErrors = result.errors;
            return false;
        }
        this.sessionErrors = [];
        try {
            await this.api.submitSession(result.session);
        } catch (error) {
            this.lastSubmitError =
                error instanceof ApiError ? `${error.body.code}: ${error.body.detail}` : String(error);
            return false;
        }
        await this.refreshRecommendation();
        if (this.selected) {
            await this.select(this.selected.tree.root, at);
        }
        return true;
    }

    /** Replay a sequence server-side; never touches the session log. */
    async whatIf(sequence: string[]): Promise<WhatIfResult> {
        try {
            const simulation = await this.api.simulate(sequence);
            return { table: buildCountTable(simulation), error: null, failingStep: null };
        } catch (error) {
            if (error instanceof ApiError) {
                return {
                    table: null,
                    error: error.body.detail,
                    failingStep: failingStep(error.body.detail),
                };
            }
            throw error;
        }
    }
}
