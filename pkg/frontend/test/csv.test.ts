import { readFileSync } from 'node:fs';
import { describe, expect, it } from 'vitest';
import { parseSweepCsv, readSweepCsv, REQUIRED_COLUMNS } from '../src/csv.js';

const FIG1 = new URL('./fixtures/fig1.csv', import.meta.url).pathname;

function fixtureWithout(column: string): string {
  const lines = readFileSync(FIG1, 'utf8').trim().split('\n');
  const header = lines[0].split(',');
  const drop = header.indexOf(column);
  return lines
    .map((line) => {
      const cells = line.split(',');
      cells.splice(drop, 1);
      return cells.join(',');
    })
    .join('\n');
}

describe('parseSweepCsv', () => {
  it('reads the fig1 fixture', () => {
    const rows = readSweepCsv(FIG1);
    expect(rows.length).toBe(5);
    expect(rows[0].sweepVar).toBe('alpha_common');
    expect(rows[0].value).toBe(0.0);
    expect(rows[0].pUb).toBeCloseTo(172.77917671296868, 10);
    expect(rows[4].value).toBe(1.0);
    expect(rows[4].pLb).toBe(2.0);
  });

  it('keeps extra columns without complaint', () => {
    const rows = parseSweepCsv('sweep_var,value,p_ub,p_lb,p_baseline,extra\na,0,1,2,3,junk\na,1,4,5,6,junk\n');
    expect(rows.length).toBe(2);
    expect(rows[1].pBaseline).toBe(6);
  });

  it.each(REQUIRED_COLUMNS.filter((c) => c !== 'sweep_var'))(
    'names the missing column %s',
    (column) => {
      expect(() => parseSweepCsv(fixtureWithout(column))).toThrow(`"${column}"`);
    },
  );

  it('rejects a non-numeric cell, naming column and row', () => {
    const text = 'sweep_var,value,p_ub,p_lb,p_baseline\na,0,1,2,3\na,oops,4,5,6\n';
    expect(() => parseSweepCsv(text)).toThrow(/row 3.*"value"/);
  });

  it('rejects a header-only file', () => {
    expect(() => parseSweepCsv('sweep_var,value,p_ub,p_lb,p_baseline\n')).toThrow(/no data rows/);
  });
});
