// SVG drawing of the derived board; no game logic here.

import type { BoardModel } from "./model.js";
import { HEIGHT, WIDTH } from "./model.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export function renderBoard(
  svg: SVGSVGElement, board: BoardModel,
  onNodeClick: (id: string) => void,
): void {
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  while (svg.firstChild) svg.removeChild(svg.firstChild);

  for (const e of board.edges) {
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(e.x1));
    line.setAttribute("y1", String(e.y1));
    line.setAttribute("x2", String(e.x2));
    line.setAttribute("y2", String(e.y2));
    line.setAttribute("class", "edge");
    svg.appendChild(line);
  }
  for (const n of board.nodes) {
    const g = document.createElementNS(SVG_NS, "g");
    g.setAttribute("class", n.classes.join(" "));
    g.addEventListener("click", () => onNodeClick(n.id));
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(n.x));
    circle.setAttribute("cy", String(n.y));
    circle.setAttribute("r", "17");
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(n.x));
    label.setAttribute("y", String(n.y - 24));
    label.setAttribute("text-anchor", "middle");
    label.textContent = n.id;
    g.appendChild(circle);
    g.appendChild(label);
    svg.appendChild(g);
  }
}

export function renderHistory(el: HTMLElement, rows: string[]): void {
  el.innerHTML = "";
  for (const row of rows) {
    const li = document.createElement("li");
    li.textContent = row;
    el.appendChild(li);
  }
}

export function renderPanels(el: HTMLElement,
                             panels: Record<string, unknown>[]): void {
  el.innerHTML = "";
  for (const panel of panels) {
    const pre = document.createElement("pre");
    pre.textContent = JSON.stringify(panel, null, 1);
    el.appendChild(pre);
  }
}
