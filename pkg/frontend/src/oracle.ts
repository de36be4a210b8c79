/**
 * Oracle stub: a "model" that reads the reference segmentation and emits
 * one-hot scores for the gold label at every first-subword position. It
 * exists to verify the wiring end to end -- scoring its output must yield
 * all-zero error rates.
 */

import { DialogRec, LabelSetInfo, jointLabels } from './corpus.js';
import { encodeJoint, serialize, toSubwords, Tokenizer } from './coding.js';
import { TokenClassifier } from './model.js';

export class OracleModel implements TokenClassifier {
  labelCount: number;
  private labels: string[];
  private tokenizer: Tokenizer;
  private targets: number[] = [];
  private cursor = 0;

  constructor(labelSet: LabelSetInfo, tokenizer: Tokenizer) {
    this.labels = jointLabels(labelSet);
    this.labelCount = this.labels.length;
    this.tokenizer = tokenizer;
  }

  beginDialog(dialog: DialogRec): void {
    const gold = encodeJoint(dialog);
    const view = serialize(dialog);
    const sub = toSubwords(view.items, this.tokenizer);
    this.targets = sub.activeItem.map((item) => {
      if (item === null) return 0; // continuation subword, discarded anyway
      const wordIdx = view.wordIndices[item];
      if (wordIdx === null) return 0; // sentinel, discarded anyway
      return this.labels.indexOf(gold[wordIdx]);
    });
    this.cursor = 0;
  }

  classify(pieces: string[]): number[][] {
    return pieces.map(() => {
      const target = this.targets[this.cursor++] ?? 0;
      const scores = new Array<number>(this.labelCount).fill(0);
      scores[target] = 1;
      return scores;
    });
  }
}
