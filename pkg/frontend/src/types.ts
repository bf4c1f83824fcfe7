// Response shapes of the knowledge-state API. The dashboard never computes
// understanding numbers itself; everything below arrives from the server.

export interface KnowledgePointInfo {
    id: string;
    name: string;
    aliases: string[];
    bkp: boolean;
}

export interface FamiliarityInfo {
    kp: string;
    at: string;
    familiarity: number;
    percentage: number;
}

export interface TreeInfo {
    root: string;
    edges: Record<string, string[]>;
    bkp: Record<string, boolean>;
    cut_edges: [string, string][];
    height: number;
    node_count: number;
}

export interface AssessmentInfo {
    kp: string;
    pu: number;
    pf_root: number;
    ap_descendants: number;
    classification: "Understood" | "NotUnderstood";
    magnitude?: number;
    at: string;
    display_percent: number;
}

export interface ReverseInfo {
    root: string;
    dependents: Record<string, string[]>;
    transitive: string[];
}

export interface RecommendationInfo {
    policy: string;
    documents?: string[];
    document?: string | null;
    puds?: Record<string, number>;
}

export interface DocumentInfo {
    doc_id: string;
    subject_kp: string;
    kps: string[];
    text: string;
}

export interface SimulationRow {
    label: string;
    counts: number[];
}

export interface SimulationInfo {
    columns: string[];
    rows: SimulationRow[];
    learning_order: string[];
    ineffective: string[];
}

export interface SessionPayload {
    session_id: string;
    cessation_time: string;
    duration_min: number;
    shares: Record<string, number>;
}

export interface ApiErrorBody {
    status: number;
    code: string;
    detail: string;
}
