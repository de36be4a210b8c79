/**
 * Reader for the daseg corpus interchange format: newline-delimited JSON
 * with a header record (format, label set, variant) followed by one record
 * per dialog.
 */

import { readFileSync } from 'fs';

export interface LabelSetInfo {
  name: string;
  acts: string[];
  fallback_act: string;
}

export interface TurnRec {
  speaker: string;
  words: string[];
}

export interface SegmentRec {
  start: number;
  end: number;
  act: string;
  continues?: boolean;
}

export interface DialogRec {
  id: string;
  turns: TurnRec[];
  segments?: SegmentRec[];
}

export interface CorpusFile {
  name: string;
  variant: string;
  labelSet: LabelSetInfo;
  dialogs: DialogRec[];
}

const CORPUS_FORMAT = 'daseg-corpus';

export function jointLabels(labelSet: LabelSetInfo): string[] {
  return ['I', ...labelSet.acts.map((a) => `E_${a}`)];
}

export function wordCount(dialog: DialogRec): number {
  return dialog.turns.reduce((n, t) => n + t.words.length, 0);
}

export function readCorpus(path: string): CorpusFile {
  const lines = readFileSync(path, 'utf-8').split('\n').filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new Error(`${path}: empty corpus file`);
  }
  let header: any;
  try {
    header = JSON.parse(lines[0]);
  } catch (e) {
    throw new Error(`${path}:1: not a corpus header: ${e}`);
  }
  if (header.format !== CORPUS_FORMAT) {
    throw new Error(`${path}: expected format ${CORPUS_FORMAT}, got ${header.format}`);
  }
  const dialogs: DialogRec[] = [];
  for (let i = 1; i < lines.length; i++) {
    let rec: any;
    try {
      rec = JSON.parse(lines[i]);
    } catch (e) {
      throw new Error(`${path}:${i + 1}: bad dialog record: ${e}`);
    }
    if (typeof rec.id !== 'string' || !Array.isArray(rec.turns)) {
      throw new Error(`${path}:${i + 1}: dialog record missing id/turns`);
    }
    dialogs.push(rec as DialogRec);
  }
  return {
    name: header.name,
    variant: header.variant,
    labelSet: header.label_set as LabelSetInfo,
    dialogs,
  };
}
