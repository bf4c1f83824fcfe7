import type { AssessmentInfo } from "./types.js";

/** Whole-percent rendering; fractions stay untouched until this point. */
export function toWholePercent(fraction: number): string {
    const clamped = Math.min(Math.max(fraction, 0), 1);
    return `${Math.round(clamped * 100)}%`;
}

/** Root badge text, preferring the server-rounded value when present. */
export function rootBadge(assessment: AssessmentInfo): string {
    if (typeof assessment.display_percent === "number") {
        return `${assessment.display_percent}%`;
    }
    return toWholePercent(assessment.pu);
}

export function classificationLabel(assessment: AssessmentInfo): string {
    return assessment.classification === "Understood" ? "Understood" : "Not understood";
}

/** Color scale for node percentages: red at 0 through green at 1. */
export function percentColor(fraction: number): string {
    const clamped = Math.min(Math.max(fraction, 0), 1);
    const hue = Math.round(clamped * 120);
    return `hsl(${hue}, 70%, 72%)`;
}
