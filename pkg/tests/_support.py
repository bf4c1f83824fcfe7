"""Shared test data and independent oracles.

The expected values below are hand-transcribed from the source tables of
the probability-theory corpus, so they provide a verification path that
does not go through the extraction or tree-building code under test.
"""

from __future__ import annotations

import random

from uttree.corpus import load_corpus

# Third column of the 8-document corpus: document id -> knowledge points.
TABLE1_DOC_KPS = {
    "D1": {"SSP", "JPD", "Time", "SP"},
    "D2": {"SP", "PM", "TS", "Time", "Space", "System", "Variable", "RaV"},
    "D3": {"JPD", "RV", "PS", "PD", "Variable", "Probability"},
    "D4": {"PM", "SS", "Event", "Probability"},
    "D5": {"RV", "Variable", "Event"},
    "D6": {"PS", "MC", "SS", "Probability", "Event"},
    "D7": {"PD", "Probability"},
    "D8": {"SS", "Sample"},
}

TABLE1_SUBJECTS = {
    "D1": "SSP",
    "D2": "SP",
    "D3": "JPD",
    "D4": "PM",
    "D5": "RV",
    "D6": "PS",
    "D7": "PD",
    "D8": "SS",
}

TABLE1_BKPS = {
    "Time", "Space", "System", "Variable", "RaV",
    "Probability", "Event", "Sample", "MC", "TS",
}

# Replay of the published count matrix: 9 rows of 8 integer cells.
TABLE3_SEQUENCE = ["D5", "D8", "D4", "D2", "D7", "D6", "D3", "D1"]
TABLE3_ROWS = [
    (8, 3, 5, 2, 1, 2, 1, 1),
    (7, 3, 4, 2, 0, 2, 1, 1),
    (6, 2, 3, 1, 0, 1, 1, 0),
    (5, 1, 3, 0, 0, 1, 1, 0),
    (4, 0, 3, 0, 0, 1, 1, 0),
    (3, 0, 2, 0, 0, 1, 0, 0),
    (2, 0, 1, 0, 0, 0, 0, 0),
    (1, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0),
]

CLT_EXPECTED_CHILDREN = {"sample", "distribution", "mean", "independent", "normal"}

CLT_DOC_KPS = {
    "CLT1": {"CLT", "sample", "distribution", "mean", "independent",
             "random variable", "normal", "size"},
    "CLT2": {"CLT", "distribution", "sum", "average", "independent",
             "variable", "normal"},
    "CLT3": {"CLT", "population", "standard deviation", "random",
             "replacement", "distribution", "sample", "mean", "normal"},
}


def table1_child_map() -> dict[str, set[str]]:
    """Forward edges derived by hand from the document KP column."""
    return {
        TABLE1_SUBJECTS[doc_id]: kps - {TABLE1_SUBJECTS[doc_id]}
        for doc_id, kps in TABLE1_DOC_KPS.items()
    }


def bfs_closure(start_kps: set[str], children: dict[str, set[str]], bkps: set[str]) -> set[str]:
    """Independent reachability oracle: non-BKP closure of a KP set."""
    required: set[str] = set()
    frontier = [kp for kp in start_kps if kp not in bkps]
    while frontier:
        kp = frontier.pop()
        if kp in required:
            continue
        required.add(kp)
        for child in children.get(kp, ()):
            if child not in bkps and child not in required:
                frontier.append(child)
    return required


def table1_closure_oracle(doc_id: str) -> set[str]:
    return bfs_closure(TABLE1_DOC_KPS[doc_id], table1_child_map(), TABLE1_BKPS)


def random_acyclic_corpus(rng: random.Random, max_kps: int = 30):
    """A random acyclic definition corpus plus its generation record.

    Children always have a strictly higher index than their parent, so the
    dependency relation is acyclic by construction.  Returns
    ``(corpus, doc_kps, child_map, bkps)`` where the last three come from
    the generator, independent of the extraction pipeline.
    """
    n = rng.randint(4, max_kps)
    ids = [f"k{i:02d}" for i in range(n)]
    defined = sorted(rng.sample(range(n - 1), k=rng.randint(1, max(1, (n - 1) // 2))))

    child_map: dict[str, set[str]] = {}
    doc_kps: dict[str, set[str]] = {}
    documents = []
    for index in defined:
        subject = ids[index]
        pool = ids[index + 1 : n]
        children = set(rng.sample(pool, k=rng.randint(1, min(4, len(pool)))))
        child_map[subject] = children
        doc_id = f"doc-{subject}"
        doc_kps[doc_id] = {subject} | children
        words = " and ".join(sorted(children))
        documents.append(
            {
                "doc_id": doc_id,
                "subject_kp": subject,
                "text": f"{subject} is interpreted by {words}.",
            }
        )

    bkps = {kp for kp in ids if kp not in child_map}
    lexicon = [
        {"id": kp, "name": kp, "aliases": [], "bkp": kp in bkps}
        for kp in ids
    ]
    corpus = load_corpus({"lexicon": lexicon, "documents": documents})
    return corpus, doc_kps, child_map, bkps
