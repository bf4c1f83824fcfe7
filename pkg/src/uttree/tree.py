"""Understanding trees: construction, deduplication, inversion and assessment.

An understanding tree compiles the background knowledge points essential
to understand its root.  Children of a knowledge point are chosen by a
majority vote over its definition documents; non-basic children are
expanded recursively, and basic knowledge points (BKPs) terminate the
recursion as leaves.  The tree is stored in deduplicated (DAG) form:
each knowledge point appears once, shared by all of its parents.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import KnowledgeState, percentage_of_familiarity
from .corpus import Corpus
from .errors import InvalidArgumentError, MissingDefinitionError, UnknownKnowledgePointError

BKP_POLICY_ASSUMED = "assumed"  # descendants that are BKPs count as fully familiar
BKP_POLICY_ACTUAL = "actual"  # BKPs are scored from their recorded familiarity

CLASSIFICATION_UNDERSTOOD = "Understood"
CLASSIFICATION_NOT_UNDERSTOOD = "NotUnderstood"


@dataclass(frozen=True)
class UnderstandingTree:
    """Deduplicated dependency DAG rooted at one knowledge point.

    ``edges`` maps each expanded node to its ordered children.  An edge in
    ``cut_edges`` is a back-reference severed during expansion to break a
    definition cycle; traversals skip it, so the remaining edges are
    acyclic.
    """

    root: str
    edges: Mapping[str, tuple[str, ...]]
    node_set: frozenset[str]
    bkps: frozenset[str]
    cut_edges: frozenset[tuple[str, str]] = frozenset()

    def __post_init__(self):
        object.__setattr__(
            self, "edges", {kp: tuple(children) for kp, children in self.edges.items()}
        )
        if self.root not in self.node_set:
            raise InvalidArgumentError("tree root must be a member of its node set")

    def children(self, kp_id: str) -> tuple[str, ...]:
        """Children reachable from ``kp_id``, cut back-references excluded."""
        return tuple(
            child
            for child in self.edges.get(kp_id, ())
            if (kp_id, child) not in self.cut_edges
        )

    @property
    def descendants(self) -> frozenset[str]:
        return self.node_set - {self.root}

    @property
    def leaves(self) -> frozenset[str]:
        return frozenset(kp for kp in self.node_set if not self.children(kp))

    def to_json_dict(self) -> dict:
        return {
            "root": self.root,
            "edges": {kp: list(children) for kp, children in sorted(self.edges.items())},
            "bkp": {kp: kp in self.bkps for kp in sorted(self.node_set)},
            "cut_edges": sorted(list(edge) for edge in self.cut_edges),
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "UnderstandingTree":
        edges = {kp: tuple(children) for kp, children in data["edges"].items()}
        bkp_flags = data.get("bkp", {})
        return cls(
            root=data["root"],
            edges=edges,
            node_set=frozenset(bkp_flags),
            bkps=frozenset(kp for kp, flag in bkp_flags.items() if flag),
            cut_edges=frozenset(tuple(edge) for edge in data.get("cut_edges", ())),
        )

    def to_dot(self, name: str = "understanding_tree") -> str:
        """Graphviz DOT rendering; BKPs drawn as boxes, cut references dashed."""
        lines = [f"digraph {name} {{", "  rankdir=TB;"]
        for kp in sorted(self.node_set):
            shape = "box" if kp in self.bkps else "ellipse"
            lines.append(f'  "{kp}" [shape={shape}];')
        for parent in sorted(self.edges):
            for child in self.edges[parent]:
                style = ' [style=dashed, label="ref"]' if (parent, child) in self.cut_edges else ""
                lines.append(f'  "{parent}" -> "{child}"{style};')
        lines.append("}")
        return "\n".join(lines)


@dataclass(frozen=True)
class UnderstandingAssessment:
    """Quantified understanding of a root knowledge point.

    ``pu`` is the product of the root's familiarity percentage and the
    average familiarity percentage over the deduplicated descendants.
    ``magnitude`` (mean familiarity over non-BKP nodes) is reported only
    once the root is fully understood.
    """

    kp_id: str
    pu: float
    pf_root: float
    ap_descendants: float
    classification: str
    magnitude: float | None = None

    def to_json_dict(self) -> dict:
        data = {
            "kp": self.kp_id,
            "pu": self.pu,
            "pf_root": self.pf_root,
            "ap_descendants": self.ap_descendants,
            "classification": self.classification,
        }
        if self.magnitude is not None:
            data["magnitude"] = self.magnitude
        return data


@dataclass(frozen=True)
class ReverseTree:
    """Which knowledge points depend, transitively, on the root.

    ``dependents[a]`` is the set of knowledge points whose child set
    contains ``a`` directly; the map covers the root's full transitive
    dependent closure.
    """

    root: str
    dependents: Mapping[str, frozenset[str]]

    @property
    def depth_one(self) -> frozenset[str]:
        return self.dependents.get(self.root, frozenset())

    @property
    def transitive(self) -> frozenset[str]:
        everything = set()
        for kp, parents in self.dependents.items():
            everything.update(parents)
            if kp != self.root:
                everything.add(kp)
        return frozenset(everything)

    def to_json_dict(self) -> dict:
        return {
            "root": self.root,
            "dependents": {kp: sorted(vals) for kp, vals in sorted(self.dependents.items())},
            "transitive": sorted(self.transitive),
        }


def select_children(
    kp_id: str,
    definitions: Sequence[Iterable[str]],
    rule: str = "majority",
) -> list[str]:
    """Choose the children of ``kp_id`` from its definitions' KP sets.

    A knowledge point qualifies when strictly more than half of the
    definitions reference it (so a single definition contributes all of
    its KPs).  The subject itself is never its own child.  Order follows
    first appearance across the definitions.
    """
    if rule != "majority":
        raise InvalidArgumentError(f"unsupported child-selection rule {rule!r}")
    if not definitions:
        raise MissingDefinitionError(kp_id)
    counts: dict[str, int] = {}
    for definition in definitions:
        for candidate in dict.fromkeys(definition):
            if candidate != kp_id:
                counts[candidate] = counts.get(candidate, 0) + 1
    cutoff = len(definitions) / 2
    return [candidate for candidate, n in counts.items() if n > cutoff]


def corpus_children(corpus: Corpus) -> dict[str, list[str]]:
    """Majority-vote child lists for every defined knowledge point in the corpus."""
    children: dict[str, list[str]] = {}
    for kp_id in corpus.lexicon:
        definitions = corpus.definitions_of(kp_id)
        if definitions:
            children[kp_id] = select_children(
                kp_id, [doc.extracted_kps for doc in definitions]
            )
    return children


def build_tree(
    kp_id: str,
    corpus: Corpus,
    bkps: frozenset[str] | None = None,
) -> UnderstandingTree:
    """Construct the fully extended understanding tree of ``kp_id``.

    Expansion stops at BKPs.  A child already on the current
    root-to-node path is kept as a reference leaf and its edge recorded
    in ``cut_edges`` instead of being re-expanded, so construction
    terminates on cyclic definition corpora too.
    """
    if kp_id not in corpus.lexicon:
        raise UnknownKnowledgePointError(kp_id)
    if bkps is None:
        bkps = corpus.bkp_ids
    child_lists = corpus_children(corpus)

    edges: dict[str, tuple[str, ...]] = {}
    cut_edges: set[tuple[str, str]] = set()
    on_path: set[str] = set()

    def expand(node: str) -> None:
        if node in bkps or node in edges:
            return
        if node not in child_lists:
            raise MissingDefinitionError(node)
        children = child_lists[node]
        edges[node] = tuple(children)
        on_path.add(node)
        for child in children:
            if child in on_path:
                cut_edges.add((node, child))
            else:
                expand(child)
        on_path.discard(node)

    expand(kp_id)

    node_set = {kp_id}
    stack = [kp_id]
    while stack:
        current = stack.pop()
        for child in edges.get(current, ()):
            if (current, child) not in cut_edges and child not in node_set:
                node_set.add(child)
                stack.append(child)

    return UnderstandingTree(
        root=kp_id,
        edges={kp: children for kp, children in edges.items() if kp in node_set},
        node_set=frozenset(node_set),
        bkps=frozenset(node_set) & bkps,
        cut_edges=frozenset(
            edge for edge in cut_edges if edge[0] in node_set and edge[1] in node_set
        ),
    )


def standardize(tree: UnderstandingTree) -> UnderstandingTree:
    """Normalize a tree to its canonical deduplicated form.

    Keeps only nodes reachable from the root, removes repeated children,
    and drops dangling cut edges.  Idempotent; node set and reachability
    are preserved for well-formed input.
    """
    reachable = {tree.root}
    ordered = [tree.root]
    index = 0
    deduped: dict[str, tuple[str, ...]] = {}
    while index < len(ordered):
        current = ordered[index]
        index += 1
        children = tuple(dict.fromkeys(tree.edges.get(current, ())))
        if children:
            deduped[current] = children
        for child in tree.children(current):
            if child not in reachable:
                reachable.add(child)
                ordered.append(child)
    return UnderstandingTree(
        root=tree.root,
        edges={kp: children for kp, children in deduped.items() if kp in reachable},
        node_set=frozenset(reachable),
        bkps=tree.bkps & frozenset(reachable),
        cut_edges=frozenset(
            (a, b) for a, b in tree.cut_edges if a in reachable and b in reachable
        ),
    )


def complexity(tree: UnderstandingTree) -> tuple[int, int]:
    """(height, node count) of a tree; a single node has height 1."""
    depth_cache: dict[str, int] = {}

    def depth(node: str) -> int:
        if node in depth_cache:
            return depth_cache[node]
        children = tree.children(node)
        value = 1 if not children else 1 + max(depth(child) for child in children)
        depth_cache[node] = value
        return value

    return depth(tree.root), len(tree.node_set)


def assess(
    kp_id: str,
    tree: UnderstandingTree,
    state: KnowledgeState,
    bkp_policy: str = BKP_POLICY_ASSUMED,
) -> UnderstandingAssessment:
    """Quantify understanding of ``kp_id`` from the given knowledge state.

    The root is always scored from its recorded familiarity; the policy
    governs descendants only.  Classification is Understood exactly when
    the percentage of understanding reaches 1.
    """
    if bkp_policy not in (BKP_POLICY_ASSUMED, BKP_POLICY_ACTUAL):
        raise InvalidArgumentError(f"unknown bkp policy {bkp_policy!r}")
    if kp_id != tree.root:
        raise InvalidArgumentError(
            f"assessment target {kp_id!r} does not match tree root {tree.root!r}"
        )
    threshold = state.threshold_config

    def node_percentage(node: str) -> float:
        if bkp_policy == BKP_POLICY_ASSUMED and node in tree.bkps:
            return 1.0
        return percentage_of_familiarity(state.familiarity.get(node, 0.0), threshold)

    pf_root = percentage_of_familiarity(state.familiarity.get(kp_id, 0.0), threshold)
    descendants = sorted(tree.descendants)
    if descendants:
        ap_descendants = sum(node_percentage(node) for node in descendants) / len(descendants)
    else:
        ap_descendants = 1.0  # a BKP root has no background to average over
    pu = pf_root * ap_descendants

    understood = pu == 1.0
    magnitude = None
    if understood:
        scored = [kp for kp in sorted(tree.node_set) if kp not in tree.bkps]
        if not scored:
            scored = sorted(tree.node_set)
        magnitude = sum(state.familiarity.get(kp, 0.0) for kp in scored) / len(scored)

    return UnderstandingAssessment(
        kp_id=kp_id,
        pu=pu,
        pf_root=pf_root,
        ap_descendants=ap_descendants,
        classification=CLASSIFICATION_UNDERSTOOD if understood else CLASSIFICATION_NOT_UNDERSTOOD,
        magnitude=magnitude,
    )


def reverse_dependents(kp_id: str, corpus: Corpus) -> ReverseTree:
    """Invert the corpus dependency relation around ``kp_id``.

    Depth 1 holds every knowledge point whose child set contains
    ``kp_id``; deeper levels follow by transitivity.  Cycles are
    harmless: each node is visited once.
    """
    if kp_id not in corpus.lexicon:
        raise UnknownKnowledgePointError(kp_id)
    child_lists = corpus_children(corpus)
    direct: dict[str, set[str]] = {}
    for parent, children in child_lists.items():
        for child in children:
            direct.setdefault(child, set()).add(parent)

    dependents: dict[str, frozenset[str]] = {}
    queue = [kp_id]
    seen = {kp_id}
    while queue:
        current = queue.pop(0)
        parents = frozenset(direct.get(current, set()))
        dependents[current] = parents
        for parent in sorted(parents):
            if parent not in seen:
                seen.add(parent)
                queue.append(parent)
    return ReverseTree(root=kp_id, dependents=dependents)
