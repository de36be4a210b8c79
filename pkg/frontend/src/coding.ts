/**
 * Serialization and label plumbing mirroring the daseg joint coding:
 * a TURN sentinel between consecutive turns, per-word E/I labels, fixed
 * non-overlapping windows, and the first-subword rule for projecting
 * word labels onto subword tokens.
 */

import { DialogRec, LabelSetInfo, wordCount } from './corpus.js';

export const TURN_SENTINEL = 'TURN';

export interface TokenView {
  /** serialized items: words plus TURN sentinels */
  items: string[];
  /** per item: word index within the dialog, or null for a sentinel */
  wordIndices: (number | null)[];
}

export function serialize(dialog: DialogRec): TokenView {
  const items: string[] = [];
  const wordIndices: (number | null)[] = [];
  let w = 0;
  dialog.turns.forEach((turn, t) => {
    if (t > 0) {
      items.push(TURN_SENTINEL);
      wordIndices.push(null);
    }
    for (const word of turn.words) {
      items.push(word);
      wordIndices.push(w++);
    }
  });
  return { items, wordIndices };
}

/** Per-word joint labels from a reference segmentation. Non-final parts of
 * a continued segment keep I on their last word. */
export function encodeJoint(dialog: DialogRec): string[] {
  if (!dialog.segments) {
    throw new Error(`dialog ${dialog.id} has no reference segmentation`);
  }
  const labels = new Array<string>(wordCount(dialog)).fill('I');
  for (const seg of dialog.segments) {
    if (!seg.continues) {
      labels[seg.end] = `E_${seg.act}`;
    }
  }
  return labels;
}

export interface Window {
  start: number;
  end: number;
}

export function windows(length: number, size: number): Window[] {
  if (size < 1) {
    throw new Error(`window size must be >= 1, got ${size}`);
  }
  const out: Window[] = [];
  for (let start = 0; start < length; start += size) {
    out.push({ start, end: Math.min(start + size, length) });
  }
  return out;
}

/** A subword tokenizer: splits one word into at least one piece. */
export type Tokenizer = (word: string) => string[];

/** Identity tokenizer: one piece per word. */
export const wordTokenizer: Tokenizer = (word) => [word];

/** Fixed-length chunk tokenizer, a stand-in for real subword vocabularies. */
export function chunkTokenizer(maxLen: number): Tokenizer {
  return (word) => {
    const pieces: string[] = [];
    for (let i = 0; i < word.length; i += maxLen) {
      pieces.push(word.slice(i, i + maxLen));
    }
    return pieces.length > 0 ? pieces : [word];
  };
}

export interface SubwordView {
  pieces: string[];
  /** for each piece: index into the item sequence if it is the first piece
   * of an item, else null (its model prediction is discarded) */
  activeItem: (number | null)[];
}

export function toSubwords(items: string[], tokenize: Tokenizer): SubwordView {
  const pieces: string[] = [];
  const activeItem: (number | null)[] = [];
  items.forEach((item, idx) => {
    const sub = tokenize(item);
    sub.forEach((piece, k) => {
      pieces.push(piece);
      activeItem.push(k === 0 ? idx : null);
    });
  });
  return { pieces, activeItem };
}
