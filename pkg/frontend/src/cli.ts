#!/usr/bin/env node
import { pathToFileURL } from 'node:url';
import yargs from 'yargs';
import { FigureMode, renderFigureFile } from './figure.js';

export async function main(argv: string[]): Promise<number> {
  const parser = yargs(argv)
    .scriptName('figure-renderer')
    .command(
      'render',
      'render a sweep CSV into an SVG line chart',
      (cmd) =>
        cmd
          .option('in', { type: 'string', demandOption: true, describe: 'input sweep CSV' })
          .option('mode', {
            choices: ['fig1', 'fig2'] as const,
            demandOption: true,
            describe: 'which sweep the CSV holds; sets the x-axis label',
          })
          .option('out', { type: 'string', demandOption: true, describe: 'output SVG path' }),
      (args) => {
        renderFigureFile(args.in, args.mode as FigureMode, args.out);
        console.log(`wrote ${args.out}`);
      },
    )
    .demandCommand(1)
    .strict()
    .exitProcess(false)
    // Rethrow so yargs never falls through into the handler on bad args.
    .fail((msg, err) => {
      throw err ?? new Error(msg);
    });

  try {
    await parser.parseAsync();
    return 0;
  } catch (err) {
    console.error(err instanceof Error ? err.message : String(err));
    return 1;
  }
}

if (import.meta.url === pathToFileURL(process.argv[1] ?? '').href) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
