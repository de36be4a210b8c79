/**
 * Pluggable token-classification models. A model scores each subword piece
 * of a window against the joint label inventory; the adapter keeps only the
 * first-subword scores and turns argmaxes into per-word labels.
 */

import { readFileSync } from 'fs';

export interface TokenClassifier {
  /** one score vector (length = joint label count) per input piece */
  classify(pieces: string[]): number[][];
  labelCount: number;
  /** optional hook for models that need per-dialog state */
  beginDialog?(dialog: unknown): void;
}

/** Deterministic pseudo-random head; format-valid but meaningless labels. */
export class RandomHeadModel implements TokenClassifier {
  labelCount: number;
  private state: number;

  constructor(labelCount: number, seed: number) {
    this.labelCount = labelCount;
    this.state = seed >>> 0;
  }

  // mulberry32
  private next(): number {
    this.state = (this.state + 0x6d2b79f5) >>> 0;
    let t = this.state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  }

  classify(pieces: string[]): number[][] {
    return pieces.map(() =>
      Array.from({ length: this.labelCount }, () => this.next()),
    );
  }
}

interface StubWeights {
  labels: string[];
  /** piece -> score vector; unknown pieces fall back to `default` */
  scores: Record<string, number[]>;
  default: number[];
}

/** Linear lookup stub loaded from a JSON weight dump. Emulates a trained
 * checkpoint well enough to exercise the full inference path. */
export class JsonStubModel implements TokenClassifier {
  labelCount: number;
  private weights: StubWeights;

  constructor(path: string, expectedLabels: string[]) {
    const weights = JSON.parse(readFileSync(path, 'utf-8')) as StubWeights;
    if (weights.labels.length !== expectedLabels.length) {
      throw new Error(
        `label head size mismatch: model has ${weights.labels.length} ` +
          `outputs, corpus needs ${expectedLabels.length} joint labels`,
      );
    }
    this.weights = weights;
    this.labelCount = weights.labels.length;
  }

  classify(pieces: string[]): number[][] {
    return pieces.map(
      (p) => this.weights.scores[p] ?? this.weights.default,
    );
  }
}

export function argmax(scores: number[]): number {
  let best = 0;
  for (let i = 1; i < scores.length; i++) {
    if (scores[i] > scores[best]) best = i; // ties keep the lower index
  }
  return best;
}
