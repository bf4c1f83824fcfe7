import type { SimulationInfo } from "./types.js";

export interface CountTable {
    header: string[];
    rows: { label: string; cells: number[]; ineffective: boolean }[];
}

/** Rows for the what-if table, straight from the replay payload. */
export function buildCountTable(simulation: SimulationInfo): CountTable {
    const ineffective = new Set(simulation.ineffective);
    return {
        header: ["sequence", ...simulation.columns],
        rows: simulation.rows.map((row, index) => ({
            label: row.label,
            cells: [...row.counts],
            ineffective: index > 0 && ineffective.has(row.label),
        })),
    };
}

/** Parse the failing step out of a sequence-invalid error detail, if any. */
export function failingStep(detail: string): number | null {
    const match = /step (\d+)/.exec(detail);
    return match && match[1] ? Number(match[1]) : null;
}

/** Split a free-text sequence entry ("D5, D8 D4") into document ids. */
export function parseSequenceInput(raw: string): string[] {
    return raw
        .split(/[\s,]+/)
        .map((part) => part.trim())
        .filter((part) => part.length > 0);
}
