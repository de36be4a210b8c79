/**
 * End-to-end inference: serialize each dialog with TURN sentinels, tokenize
 * to subwords, window the pieces, classify, keep first-subword predictions,
 * collapse back to per-word labels, and emit the predictions format.
 */

import { writeFileSync, renameSync } from 'fs';

import { CorpusFile, DialogRec, jointLabels } from './corpus.js';
import { serialize, toSubwords, windows, Tokenizer, wordTokenizer } from './coding.js';
import { TokenClassifier, argmax } from './model.js';

export interface AdapterConfig {
  windowSize: number;
  tokenizer: Tokenizer;
  producer: string;
}

export const DEFAULT_CONFIG: AdapterConfig = {
  windowSize: 512,
  tokenizer: wordTokenizer,
  producer: 'daseg-adapter',
};

export function predictDialog(
  dialog: DialogRec,
  model: TokenClassifier,
  labels: string[],
  config: AdapterConfig,
): string[] {
  if (model.labelCount !== labels.length) {
    throw new Error(
      `label head size mismatch: model has ${model.labelCount} outputs, ` +
        `corpus needs ${labels.length} joint labels`,
    );
  }
  model.beginDialog?.(dialog);
  const view = serialize(dialog);
  const sub = toSubwords(view.items, config.tokenizer);
  const byWord = new Map<number, string>();
  for (const w of windows(sub.pieces.length, config.windowSize)) {
    const scores = model.classify(sub.pieces.slice(w.start, w.end));
    for (let k = 0; k < scores.length; k++) {
      const item = sub.activeItem[w.start + k];
      if (item === null) continue; // continuation subword: discard
      const wordIdx = view.wordIndices[item];
      if (wordIdx === null) continue; // TURN sentinel: never labeled
      byWord.set(wordIdx, labels[argmax(scores[k])]);
    }
  }
  const out: string[] = [];
  for (let i = 0; i < byWord.size; i++) {
    const label = byWord.get(i);
    if (label === undefined) {
      throw new Error(`dialog ${dialog.id}: word ${i} received no prediction`);
    }
    out.push(label);
  }
  return out;
}

export function exportPredictions(
  corpus: CorpusFile,
  model: TokenClassifier,
  outPath: string,
  config: AdapterConfig = DEFAULT_CONFIG,
): void {
  const labels = jointLabels(corpus.labelSet);
  const lines = [
    JSON.stringify({
      format: 'daseg-predictions',
      version: 1,
      label_set: corpus.labelSet,
      variant: corpus.variant,
      producer: config.producer,
    }),
  ];
  for (const dialog of corpus.dialogs) {
    lines.push(
      JSON.stringify({
        dialog_id: dialog.id,
        labels: predictDialog(dialog, model, labels, config),
      }),
    );
  }
  // write atomically so a crash never leaves a truncated predictions file
  const tmp = `${outPath}.tmp`;
  writeFileSync(tmp, lines.join('\n') + '\n', 'utf-8');
  renameSync(tmp, outPath);
}
