import { readFileSync } from 'node:fs';
import Papa from 'papaparse';

// Columns every sweep CSV must carry before we can draw anything.
// p_ub_closed and the pi_* columns are optional: the charts ignore them.
export const REQUIRED_COLUMNS = [
  'sweep_var',
  'value',
  'p_ub',
  'p_lb',
  'p_baseline',
] as const;

export interface SweepRow {
  sweepVar: string;
  value: number;
  pUb: number;
  pLb: number;
  pBaseline: number;
}

function toNumber(raw: string | undefined, column: string, line: number): number {
  const parsed = Number(raw);
  if (raw === undefined || raw.trim() === '' || Number.isNaN(parsed)) {
    throw new Error(`row ${line}: column "${column}" is not a number (got ${JSON.stringify(raw ?? '')})`);
  }
  return parsed;
}

/** Parse sweep CSV text into rows, validating the header and every numeric cell. */
export function parseSweepCsv(text: string): SweepRow[] {
  const result = Papa.parse<Record<string, string>>(text, {
    header: true,
    skipEmptyLines: true,
  });
  if (result.errors.length > 0) {
    const first = result.errors[0];
    throw new Error(`CSV parse failed: ${first.message} (row ${first.row ?? '?'})`);
  }

  const fields = result.meta.fields ?? [];
  for (const column of REQUIRED_COLUMNS) {
    if (!fields.includes(column)) {
      throw new Error(`CSV is missing required column "${column}"`);
    }
  }
  if (result.data.length === 0) {
    throw new Error('CSV has a header but no data rows');
  }

  return result.data.map((record, i) => {
    const line = i + 2; // 1-based, after the header line
    return {
      sweepVar: record['sweep_var'] ?? '',
      value: toNumber(record['value'], 'value', line),
      pUb: toNumber(record['p_ub'], 'p_ub', line),
      pLb: toNumber(record['p_lb'], 'p_lb', line),
      pBaseline: toNumber(record['p_baseline'], 'p_baseline', line),
    };
  });
}

/** Read and parse a sweep CSV from disk. The file is only ever read, never written. */
export function readSweepCsv(path: string): SweepRow[] {
  return parseSweepCsv(readFileSync(path, 'utf8'));
}
