import { describe, expect, it } from 'vitest';
import { execFileSync } from 'child_process';
import { mkdtempSync, readFileSync, writeFileSync } from 'fs';
import { tmpdir } from 'os';
import { join } from 'path';

import { readCorpus, jointLabels, wordCount, DialogRec, LabelSetInfo } from '../src/corpus.js';
import {
  TURN_SENTINEL,
  chunkTokenizer,
  encodeJoint,
  serialize,
  toSubwords,
  windows,
  wordTokenizer,
} from '../src/coding.js';
import { JsonStubModel, RandomHeadModel, argmax } from '../src/model.js';
import { OracleModel } from '../src/oracle.js';
import { exportPredictions, predictDialog, DEFAULT_CONFIG } from '../src/adapter.js';
import { main } from '../src/cli.js';

const LABELS: LabelSetInfo = { name: 'demo', acts: ['A', 'B'], fallback_act: 'A' };

function dialog(id: string, turnWords: string[][], segs: [number, number, string][]): DialogRec {
  return {
    id,
    turns: turnWords.map((words, i) => ({ speaker: `spk${i % 2}`, words })),
    segments: segs.map(([start, end, act]) => ({ start, end, act })),
  };
}

const DIALOGS: DialogRec[] = [
  dialog('d0', [['so', 'okay.'], ['right?']], [[0, 1, 'A'], [2, 2, 'B']]),
  dialog('d1', [['one', 'two', 'three.']], [[0, 2, 'A']]),
  dialog('d2', [['huh?'], ['yes.', 'fine.']], [[0, 0, 'B'], [1, 1, 'A'], [2, 2, 'A']]),
];

function writeCorpusFile(dir: string, dialogs: DialogRec[] = DIALOGS): string {
  const header = {
    format: 'daseg-corpus',
    version: 1,
    name: 'demo',
    variant: 'nolower',
    label_set: LABELS,
    metadata: {},
  };
  const lines = [JSON.stringify(header), ...dialogs.map((d) => JSON.stringify(d))];
  const path = join(dir, 'demo.corpus');
  writeFileSync(path, lines.join('\n') + '\n');
  return path;
}

describe('corpus reader', () => {
  it('round-trips dialogs and the label set', () => {
    const dir = mkdtempSync(join(tmpdir(), 'daseg-'));
    const corpus = readCorpus(writeCorpusFile(dir));
    expect(corpus.variant).toBe('nolower');
    expect(corpus.dialogs.map((d) => d.id)).toEqual(['d0', 'd1', 'd2']);
    expect(jointLabels(corpus.labelSet)).toEqual(['I', 'E_A', 'E_B']);
  });

  it('rejects non-corpus files', () => {
    const dir = mkdtempSync(join(tmpdir(), 'daseg-'));
    const path = join(dir, 'bad');
    writeFileSync(path, '{"format": "other"}\n');
    expect(() => readCorpus(path)).toThrow(/expected format/);
  });
});

describe('serialization and coding', () => {
  it('inserts TURN sentinels between turns only', () => {
    const view = serialize(DIALOGS[0]);
    expect(view.items).toEqual(['so', 'okay.', TURN_SENTINEL, 'right?']);
    expect(view.wordIndices).toEqual([0, 1, null, 2]);
  });

  it('encodes E at segment-final words', () => {
    expect(encodeJoint(DIALOGS[0])).toEqual(['I', 'E_A', 'E_B']);
  });

  it('keeps I on continued segment parts', () => {
    const d = dialog('c', [['a', 'b', 'c']], [[0, 0, 'A'], [1, 1, 'B'], [2, 2, 'A']]);
    d.segments![0].continues = true;
    expect(encodeJoint(d)).toEqual(['I', 'E_B', 'E_A']);
  });

  it('windows tile the sequence without overlap', () => {
    expect(windows(5, 2)).toEqual([
      { start: 0, end: 2 },
      { start: 2, end: 4 },
      { start: 4, end: 5 },
    ]);
    expect(windows(0, 512)).toEqual([]);
  });

  it('marks only first subwords active', () => {
    const sub = toSubwords(['okay.', 'x'], chunkTokenizer(3));
    expect(sub.pieces).toEqual(['oka', 'y.', 'x']);
    expect(sub.activeItem).toEqual([0, null, 1]);
  });
});

describe('predictDialog', () => {
  it('oracle model reproduces the reference labels', () => {
    const model = new OracleModel(LABELS, wordTokenizer);
    for (const d of DIALOGS) {
      expect(predictDialog(d, model, jointLabels(LABELS), DEFAULT_CONFIG)).toEqual(
        encodeJoint(d),
      );
    }
  });

  it('oracle survives subword tokenization and tiny windows', () => {
    const tokenizer = chunkTokenizer(2);
    const model = new OracleModel(LABELS, tokenizer);
    const config = { ...DEFAULT_CONFIG, tokenizer, windowSize: 3 };
    for (const d of DIALOGS) {
      expect(predictDialog(d, model, jointLabels(LABELS), config)).toEqual(encodeJoint(d));
    }
  });

  it('random head emits one valid label per word', () => {
    const labels = jointLabels(LABELS);
    const model = new RandomHeadModel(labels.length, 42);
    for (const d of DIALOGS) {
      const out = predictDialog(d, model, labels, DEFAULT_CONFIG);
      expect(out).toHaveLength(wordCount(d));
      for (const label of out) expect(labels).toContain(label);
    }
  });

  it('window size does not change a local model away from boundaries', () => {
    const labels = jointLabels(LABELS);
    const big = predictDialog(DIALOGS[1], new RandomHeadModel(labels.length, 7), labels, {
      ...DEFAULT_CONFIG,
      windowSize: 512,
    });
    const small = predictDialog(DIALOGS[1], new RandomHeadModel(labels.length, 7), labels, {
      ...DEFAULT_CONFIG,
      windowSize: 1,
    });
    // the random head consumes its stream identically either way
    expect(small).toEqual(big);
  });

  it('rejects a model whose head size mismatches the label set', () => {
    const model = new RandomHeadModel(5, 42);
    expect(() => predictDialog(DIALOGS[0], model, jointLabels(LABELS), DEFAULT_CONFIG)).toThrow(
      /head size mismatch/,
    );
  });
});

describe('JSON stub model', () => {
  it('loads and classifies by piece lookup', () => {
    const dir = mkdtempSync(join(tmpdir(), 'daseg-'));
    const path = join(dir, 'stub.json');
    writeFileSync(
      path,
      JSON.stringify({
        labels: ['I', 'E_A', 'E_B'],
        scores: { 'okay.': [0, 1, 0], 'right?': [0, 0, 1] },
        default: [1, 0, 0],
      }),
    );
    const model = new JsonStubModel(path, jointLabels(LABELS));
    const out = predictDialog(DIALOGS[0], model, jointLabels(LABELS), DEFAULT_CONFIG);
    expect(out).toEqual(['I', 'E_A', 'E_B']);
  });

  it('rejects a wrong-size head at load time', () => {
    const dir = mkdtempSync(join(tmpdir(), 'daseg-'));
    const path = join(dir, 'stub.json');
    writeFileSync(path, JSON.stringify({ labels: ['I'], scores: {}, default: [0] }));
    expect(() => new JsonStubModel(path, jointLabels(LABELS))).toThrow(/mismatch/);
  });
});

describe('argmax', () => {
  it('breaks ties toward the lower index', () => {
    expect(argmax([1, 1, 1])).toBe(0);
    expect(argmax([0, 2, 2])).toBe(1);
  });
});

function pythonAvailable(): boolean {
  try {
    execFileSync('python3', ['-c', 'import daseg'], { stdio: 'ignore' });
    return true;
  } catch {
    return false;
  }
}

describe('end to end against the scoring toolkit', () => {
  it.skipIf(!pythonAvailable())('oracle predictions evaluate to zero error', () => {
    const dir = mkdtempSync(join(tmpdir(), 'daseg-'));
    const corpusPath = writeCorpusFile(dir);
    const predsPath = join(dir, 'oracle.preds');
    const reportPath = join(dir, 'report.json');
    expect(
      main(['export', '--corpus', corpusPath, '--output', predsPath, '--model', 'oracle']),
    ).toBe(0);
    execFileSync('python3', [
      '-m', 'daseg.cli', 'evaluate',
      '--ref', corpusPath, '--hyp', predsPath, '--report', reportPath,
    ]);
    const report = JSON.parse(readFileSync(reportPath, 'utf-8'));
    expect(report.DSER).toBe(0);
    expect(report.DER).toBe(0);
    expect(report.micro_f1).toBe(100);
  });

  it.skipIf(!pythonAvailable())('random predictions still pass format validation', () => {
    const dir = mkdtempSync(join(tmpdir(), 'daseg-'));
    const corpusPath = writeCorpusFile(dir);
    const predsPath = join(dir, 'random.preds');
    expect(
      main(['export', '--corpus', corpusPath, '--output', predsPath, '--seed', '7']),
    ).toBe(0);
    // evaluate exits 0 only when validate_against reports no violations
    execFileSync('python3', [
      '-m', 'daseg.cli', 'evaluate', '--ref', corpusPath, '--hyp', predsPath,
    ]);
  });

  it('cli returns 2 on usage errors and 1 on domain errors', () => {
    expect(main(['bogus'])).toBe(2);
    expect(main(['export', '--corpus', '/nonexistent', '--output', '/tmp/x'])).toBe(1);
  });
});
