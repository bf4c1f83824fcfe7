// Payloads recorded from a live API instance seeded with the bundled
// probability-theory corpus and the worked-example familiarity values.

import type {
    AssessmentInfo,
    FamiliarityInfo,
    KnowledgePointInfo,
    RecommendationInfo,
    SimulationInfo,
    TreeInfo,
} from "../src/types.js";

export const SSP_TREE: TreeInfo = {
    root: "SSP",
    edges: {
        JPD: ["Probability", "RV", "PS", "PD", "Variable"],
        PD: ["Probability"],
        PM: ["SS", "Event", "Probability"],
        PS: ["MC", "SS", "Event", "Probability"],
        RV: ["Variable", "Event"],
        SP: ["PM", "Time", "Space", "TS", "System", "Variable", "RaV"],
        SS: ["Sample"],
        SSP: ["SP", "JPD", "Time"],
    },
    bkp: {
        Event: true, JPD: false, MC: true, PD: false, PM: false, PS: false,
        Probability: true, RV: false, RaV: true, SP: false, SS: false,
        SSP: false, Sample: true, Space: true, System: true, TS: true,
        Time: true, Variable: true,
    },
    cut_edges: [],
    height: 5,
    node_count: 18,
};

export const SSP_ASSESSMENT: AssessmentInfo = {
    kp: "SSP",
    pu: 0.7565,
    pf_root: 0.85,
    ap_descendants: 0.89,
    classification: "NotUnderstood",
    at: "2025-03-01T12:00:00Z",
    display_percent: 76,
};

export const FRESH_RECOMMENDATION: RecommendationInfo = {
    policy: "min-count",
    documents: ["D5", "D7", "D8"],
};

export const AFTER_SESSION_RECOMMENDATION: RecommendationInfo = {
    policy: "min-count",
    documents: ["D7", "D8"],
};

export const REPLAY: SimulationInfo = {
    columns: ["D1", "D2", "D3", "D4", "D5", "D6", "D7", "D8"],
    rows: [
        { label: "initial", counts: [8, 3, 5, 2, 1, 2, 1, 1] },
        { label: "D5", counts: [7, 3, 4, 2, 0, 2, 1, 1] },
        { label: "D8", counts: [6, 2, 3, 1, 0, 1, 1, 0] },
        { label: "D4", counts: [5, 1, 3, 0, 0, 1, 1, 0] },
        { label: "D2", counts: [4, 0, 3, 0, 0, 1, 1, 0] },
        { label: "D7", counts: [3, 0, 2, 0, 0, 1, 0, 0] },
        { label: "D6", counts: [2, 0, 1, 0, 0, 0, 0, 0] },
        { label: "D3", counts: [1, 0, 0, 0, 0, 0, 0, 0] },
        { label: "D1", counts: [0, 0, 0, 0, 0, 0, 0, 0] },
    ],
    learning_order: ["D5", "D8", "D4", "D2", "D7", "D6", "D3", "D1"],
    ineffective: [],
};

export const KPS: KnowledgePointInfo[] = Object.entries(SSP_TREE.bkp).map(([id, bkp]) => ({
    id,
    name: id,
    aliases: [],
    bkp,
}));

export function familiarityOf(kp: string, percentage: number): FamiliarityInfo {
    return {
        kp,
        at: "2025-03-01T12:00:00Z",
        familiarity: percentage * 100,
        percentage,
    };
}
