import { scaleLinear } from 'd3-scale';

export interface Point {
  x: number;
  y: number;
}

export interface Curve {
  label: string;
  points: Point[];
  color: string;
  /** SVG stroke-dasharray, e.g. "6 3"; omit for a solid line. */
  dash?: string;
}

export interface PlotSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  curves: Curve[];
  width?: number;
  height?: number;
}

const MARGIN = { top: 48, right: 28, bottom: 56, left: 72 };

function escapeXml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function fmt(v: number): string {
  // Trim scale output to something readable in tick labels and path data.
  return Number(v.toFixed(3)).toString();
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  // Degenerate span (every point identical) still needs a drawable axis.
  if (lo === hi) {
    lo -= 1;
    hi += 1;
  }
  return [lo, hi];
}

/** Assemble a standalone SVG line chart with a legend entry per curve. */
export function renderChart(spec: PlotSpec): string {
  if (spec.curves.length === 0) {
    throw new Error('plot spec selects no curves');
  }
  for (const curve of spec.curves) {
    if (curve.points.length < 2) {
      throw new Error(`curve "${curve.label}" has ${curve.points.length} points, need at least 2`);
    }
  }

  const width = spec.width ?? 720;
  const height = spec.height ?? 480;
  const innerLeft = MARGIN.left;
  const innerRight = width - MARGIN.right;
  const innerTop = MARGIN.top;
  const innerBottom = height - MARGIN.bottom;

  const xs = spec.curves.flatMap((c) => c.points.map((p) => p.x));
  const ys = spec.curves.flatMap((c) => c.points.map((p) => p.y));
  const x = scaleLinear().domain(extent(xs)).range([innerLeft, innerRight]).nice();
  const y = scaleLinear().domain(extent(ys)).range([innerBottom, innerTop]).nice();

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="12">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);

  // Grid and tick labels.
  for (const t of x.ticks(6)) {
    const px = fmt(x(t));
    parts.push(
      `<line x1="${px}" y1="${innerTop}" x2="${px}" y2="${innerBottom}" stroke="#ddd"/>`,
      `<text x="${px}" y="${innerBottom + 18}" text-anchor="middle">${fmt(t)}</text>`,
    );
  }
  for (const t of y.ticks(6)) {
    const py = fmt(y(t));
    parts.push(
      `<line x1="${innerLeft}" y1="${py}" x2="${innerRight}" y2="${py}" stroke="#ddd"/>`,
      `<text x="${innerLeft - 8}" y="${py}" text-anchor="end" dominant-baseline="middle">${fmt(t)}</text>`,
    );
  }

  // Axes.
  parts.push(
    `<line x1="${innerLeft}" y1="${innerBottom}" x2="${innerRight}" y2="${innerBottom}" stroke="black"/>`,
    `<line x1="${innerLeft}" y1="${innerTop}" x2="${innerLeft}" y2="${innerBottom}" stroke="black"/>`,
  );

  // One polyline per selected curve.
  for (const curve of spec.curves) {
    const coords = curve.points
      .map((p) => `${fmt(x(p.x))},${fmt(y(p.y))}`)
      .join(' ');
    const dash = curve.dash ? ` stroke-dasharray="${curve.dash}"` : '';
    parts.push(
      `<polyline points="${coords}" fill="none" stroke="${curve.color}" stroke-width="2"${dash}/>`,
    );
  }

  // Legend in the upper right of the plot area.
  const legendX = innerRight - 232;
  spec.curves.forEach((curve, i) => {
    const ly = innerTop + 12 + i * 20;
    const dash = curve.dash ? ` stroke-dasharray="${curve.dash}"` : '';
    parts.push(
      `<line x1="${legendX}" y1="${ly}" x2="${legendX + 28}" y2="${ly}" stroke="${curve.color}" stroke-width="2"${dash}/>`,
      `<text x="${legendX + 34}" y="${ly}" dominant-baseline="middle">${escapeXml(curve.label)}</text>`,
    );
  });

  // Title and axis labels.
  parts.push(
    `<text x="${width / 2}" y="24" text-anchor="middle" font-size="16">${escapeXml(spec.title)}</text>`,
    `<text x="${(innerLeft + innerRight) / 2}" y="${height - 14}" text-anchor="middle">${escapeXml(spec.xLabel)}</text>`,
    `<text x="20" y="${(innerTop + innerBottom) / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 20 ${(innerTop + innerBottom) / 2})">${escapeXml(spec.yLabel)}</text>`,
  );

  parts.push('</svg>');
  return parts.join('\n');
}
