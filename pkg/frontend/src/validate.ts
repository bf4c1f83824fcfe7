import type { SessionPayload } from "./types.js";

export interface SessionFormInput {
    sessionId: string;
    cessationTime: string;
    durationMin: string;
    shares: { kp: string; value: string }[];
}

export type ValidationResult =
    | { ok: true; session: SessionPayload }
    | { ok: false; errors: string[] };

const SHARE_SUM_TOLERANCE = 1e-9;

/** Client-side validation mirroring the server's session invariants. */
export function validateSessionForm(input: SessionFormInput): ValidationResult {
    const errors: string[] = [];

    const sessionId = input.sessionId.trim();
    if (!sessionId) {
        errors.push("session id is required");
    }

    if (!input.cessationTime.trim() || Number.isNaN(Date.parse(input.cessationTime))) {
        errors.push("cessation time must be a valid ISO-8601 timestamp");
    }

    const duration = Number(input.durationMin);
    if (!Number.isFinite(duration) || duration <= 0) {
        errors.push("duration must be a positive number of minutes");
    }

    const shares: Record<string, number> = {};
    let shareSum = 0;
    for (const row of input.shares) {
        const kp = row.kp.trim();
        if (!kp && !row.value.trim()) {
            continue; // blank row
        }
        if (!kp) {
            errors.push("every share row needs a knowledge point id");
            continue;
        }
        const value = Number(row.value);
        if (!Number.isFinite(value) || value <= 0 || value > 1) {
            errors.push(`share for ${kp} must be in (0, 1]`);
            continue;
        }
        if (kp in shares) {
            errors.push(`duplicate share row for ${kp}`);
            continue;
        }
        shares[kp] = value;
        shareSum += value;
    }
    if (Object.keys(shares).length === 0) {
        errors.push("at least one knowledge point share is required");
    }
    if (shareSum > 1 + SHARE_SUM_TOLERANCE) {
        errors.push("shares must sum to at most 1");
    }

    if (errors.length > 0) {
        return { ok: false, errors };
    }
    return {
        ok: true,
        session: {
            session_id: sessionId,
            cessation_time: input.cessationTime.trim(),
            duration_min: duration,
            shares,
        },
    };
}
