// Break-even curve as a hand-rolled SVG: dedicated vs MPW total cost over
// the server-sampled volumes, with the break-even volume marked.  All
// plotted numbers come straight from the response; only pixel mapping
// happens here.

import type { BreakevenReport } from "./api.js";

const WIDTH = 640;
const HEIGHT = 320;
const PAD = 46;

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

export function renderBreakevenChart(container: HTMLElement, report: BreakevenReport): void {
  container.replaceChildren();
  const points = report.curve;
  if (!points.length) {
    return;
  }
  const volumes = points.map((p) => p.volume);
  const totals = points.flatMap((p) => [p.dedicated_total.amount_minor, p.mpw_total.amount_minor]);
  const vMin = Math.min(...volumes);
  const vMax = Math.max(...volumes);
  const tMax = Math.max(...totals);

  const x = (volume: number) =>
    vMax === vMin ? PAD : PAD + ((volume - vMin) / (vMax - vMin)) * (WIDTH - 2 * PAD);
  const y = (minor: number) => HEIGHT - PAD - (minor / tMax) * (HEIGHT - 2 * PAD);

  const svg = svgEl("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    width: String(WIDTH),
    height: String(HEIGHT),
    role: "img",
  }) as SVGSVGElement;
  svg.id = "breakeven-chart";

  svg.appendChild(
    svgEl("line", {
      x1: String(PAD), y1: String(HEIGHT - PAD),
      x2: String(WIDTH - PAD), y2: String(HEIGHT - PAD),
      class: "axis",
    }),
  );
  svg.appendChild(
    svgEl("line", {
      x1: String(PAD), y1: String(PAD),
      x2: String(PAD), y2: String(HEIGHT - PAD),
      class: "axis",
    }),
  );

  const path = (selector: (p: (typeof points)[number]) => number, klass: string) => {
    const d = points
      .map((p, i) => `${i === 0 ? "M" : "L"}${x(p.volume).toFixed(1)},${y(selector(p)).toFixed(1)}`)
      .join(" ");
    return svgEl("path", { d, class: klass, fill: "none" });
  };
  svg.appendChild(path((p) => p.dedicated_total.amount_minor, "line dedicated"));
  svg.appendChild(path((p) => p.mpw_total.amount_minor, "line mpw"));

  if (report.breakeven_volume !== null) {
    const marker = svgEl("line", {
      x1: String(x(report.breakeven_volume)),
      y1: String(PAD),
      x2: String(x(report.breakeven_volume)),
      y2: String(HEIGHT - PAD),
      class: "breakeven-marker",
    });
    marker.dataset.n = String(report.breakeven_volume);
    svg.appendChild(marker);
    const label = svgEl("text", {
      x: String(Math.min(x(report.breakeven_volume) + 6, WIDTH - PAD - 60)),
      y: String(PAD + 14),
      class: "marker-label",
    });
    label.textContent = `break-even ${report.breakeven_volume}`;
    (label as SVGElement & { dataset: DOMStringMap }).dataset.n = String(report.breakeven_volume);
    svg.appendChild(label);
  }

  const legend = document.createElement("p");
  legend.className = "legend";
  legend.textContent = "dedicated mask set vs MPW seats, total cost by volume";
  container.appendChild(svg);
  container.appendChild(legend);
}
