import { layoutTree } from "./layout.js";
import { percentColor, rootBadge, classificationLabel, toWholePercent } from "./format.js";
import type { SelectedTree } from "./model.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 860;
const LAYER_HEIGHT = 92;
const NODE_RADIUS = 26;

function svgElement<K extends keyof SVGElementTagNameMap>(
    tag: K,
    attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
    const element = document.createElementNS(SVG_NS, tag);
    for (const [key, value] of Object.entries(attrs)) {
        element.setAttribute(key, value);
    }
    return element;
}

/** Node-link diagram of the selected tree, nodes colored by percentage. */
export function renderTree(container: HTMLElement, selection: SelectedTree): void {
    container.replaceChildren();

    const badge = document.createElement("div");
    badge.className = "tree-badge";
    const classification = classificationLabel(selection.assessment);
    badge.innerHTML =
        `<span class="badge-root">${selection.tree.root}</span>` +
        `<span class="badge-pu">${rootBadge(selection.assessment)}</span>` +
        `<span class="badge-class ${selection.assessment.classification}">${classification}</span>`;
    container.appendChild(badge);

    const layout = layoutTree(selection.tree);
    const height = Math.max(1, layout.depthCount) * LAYER_HEIGHT + 40;
    const svg = svgElement("svg", {
        viewBox: `0 0 ${WIDTH} ${height}`,
        width: "100%",
        role: "img",
    });

    const place = (x: number, y: number): [number, number] => [
        40 + x * (WIDTH - 80),
        40 + y * LAYER_HEIGHT,
    ];
    const positions = new Map(layout.nodes.map((node) => [node.id, place(node.x, node.y)]));

    for (const edge of layout.edges) {
        const from = positions.get(edge.from);
        const to = positions.get(edge.to);
        if (!from || !to) continue;
        svg.appendChild(
            svgElement("line", {
                x1: String(from[0]),
                y1: String(from[1]),
                x2: String(to[0]),
                y2: String(to[1]),
                class: edge.cut ? "edge cut" : "edge",
            }),
        );
    }

    for (const node of layout.nodes) {
        const position = positions.get(node.id);
        if (!position) continue;
        const [x, y] = position;
        const info = selection.familiarity.get(node.id);
        const pct = info ? info.percentage : 0;
        const isBkp = selection.tree.bkp[node.id] === true;
        const group = svgElement("g", { class: isBkp ? "node bkp" : "node" });
        if (isBkp) {
            group.appendChild(
                svgElement("rect", {
                    x: String(x - NODE_RADIUS),
                    y: String(y - NODE_RADIUS * 0.75),
                    width: String(NODE_RADIUS * 2),
                    height: String(NODE_RADIUS * 1.5),
                    rx: "6",
                    fill: percentColor(pct),
                }),
            );
        } else {
            group.appendChild(
                svgElement("circle", {
                    cx: String(x),
                    cy: String(y),
                    r: String(NODE_RADIUS),
                    fill: percentColor(pct),
                }),
            );
        }
        const label = svgElement("text", {
            x: String(x),
            y: String(y - 2),
            "text-anchor": "middle",
            class: "node-label",
        });
        label.textContent = node.id;
        const pctLabel = svgElement("text", {
            x: String(x),
            y: String(y + 12),
            "text-anchor": "middle",
            class: "node-pct",
        });
        pctLabel.textContent = toWholePercent(pct);
        group.append(label, pctLabel);
        group.appendChild(
            svgElement("title", { "data-id": node.id }),
        ).textContent = `${node.id}: ${toWholePercent(pct)} familiar`;
        svg.appendChild(group);
    }

    container.appendChild(svg);
}
