import { writeFileSync } from 'node:fs';
import { renderChart, PlotSpec } from './chart.js';
import { readSweepCsv, SweepRow } from './csv.js';

export type FigureMode = 'fig1' | 'fig2';

// fig1 sweeps the weight of the subfile shared by all files, fig2 the weight
// of the pairwise-shared subfiles; the x axis is named accordingly.
export const AXIS_LABEL: Record<FigureMode, string> = {
  fig1: 'α_5',
  fig2: 'α_2',
};

export const CURVE_LABELS = {
  pUb: 'correlation-aware upper bound',
  pBaseline: 'correlation-ignorant baseline',
  pLb: 'lower bound',
} as const;

/** Map sweep rows onto the three standard curves of a power-vs-correlation figure. */
export function figureSpec(mode: FigureMode, rows: SweepRow[]): PlotSpec {
  const points = (pick: (r: SweepRow) => number) =>
    rows.map((r) => ({ x: r.value, y: pick(r) }));
  return {
    title: `Transmission power versus ${AXIS_LABEL[mode]}`,
    xLabel: AXIS_LABEL[mode],
    yLabel: 'total transmit power',
    curves: [
      { label: CURVE_LABELS.pUb, points: points((r) => r.pUb), color: '#1f77b4' },
      { label: CURVE_LABELS.pBaseline, points: points((r) => r.pBaseline), color: '#d62728', dash: '7 4' },
      { label: CURVE_LABELS.pLb, points: points((r) => r.pLb), color: '#2ca02c', dash: '2 3' },
    ],
  };
}

/** Read a sweep CSV and write the rendered SVG next to it. The input is never modified. */
export function renderFigureFile(inPath: string, mode: FigureMode, outPath: string): void {
  const rows = readSweepCsv(inPath);
  const svg = renderChart(figureSpec(mode, rows));
  writeFileSync(outPath, svg + '\n', 'utf8');
}
