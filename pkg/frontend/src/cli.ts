#!/usr/bin/env node
/**
 * daseg-adapter export --corpus FILE --output FILE
 *     [--model oracle | random | <weights.json>]
 *     [--window 512] [--seed 42] [--subword-chunk N]
 *
 * Exit codes: 0 success, 1 domain error, 2 usage error.
 */

import { readCorpus, jointLabels } from './corpus.js';
import { chunkTokenizer, wordTokenizer, Tokenizer } from './coding.js';
import { JsonStubModel, RandomHeadModel, TokenClassifier } from './model.js';
import { OracleModel } from './oracle.js';
import { exportPredictions, DEFAULT_CONFIG } from './adapter.js';

function parseArgs(argv: string[]): Map<string, string> {
  const args = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    if (!flag.startsWith('--') || i + 1 >= argv.length) {
      throw new UsageError(`bad argument: ${flag}`);
    }
    args.set(flag.slice(2), argv[i + 1]);
  }
  return args;
}

class UsageError extends Error {}

export function main(argv: string[]): number {
  try {
    if (argv[0] !== 'export') {
      throw new UsageError('usage: daseg-adapter export --corpus F --output F [options]');
    }
    const args = parseArgs(argv.slice(1));
    const corpusPath = args.get('corpus');
    const outPath = args.get('output');
    if (!corpusPath || !outPath) {
      throw new UsageError('--corpus and --output are required');
    }
    const corpus = readCorpus(corpusPath);
    const labels = jointLabels(corpus.labelSet);
    const windowSize = parseInt(args.get('window') ?? '512', 10);
    const chunk = args.get('subword-chunk');
    const tokenizer: Tokenizer = chunk
      ? chunkTokenizer(parseInt(chunk, 10))
      : wordTokenizer;
    const seed = parseInt(args.get('seed') ?? '42', 10);

    const which = args.get('model') ?? 'random';
    let model: TokenClassifier;
    if (which === 'oracle') {
      model = new OracleModel(corpus.labelSet, tokenizer);
    } else if (which === 'random') {
      model = new RandomHeadModel(labels.length, seed);
    } else {
      model = new JsonStubModel(which, labels);
    }

    exportPredictions(corpus, model, outPath, {
      ...DEFAULT_CONFIG,
      windowSize,
      tokenizer,
    });
    console.log(`wrote ${outPath}: ${corpus.dialogs.length} dialogs`);
    return 0;
  } catch (e) {
    if (e instanceof UsageError) {
      console.error(`usage error: ${e.message}`);
      return 2;
    }
    console.error(`error: ${e instanceof Error ? e.message : e}`);
    return 1;
  }
}

import { fileURLToPath } from 'url';
if (process.argv[1] && fileURLToPath(import.meta.url) === process.argv[1]) {
  process.exit(main(process.argv.slice(2)));
}
