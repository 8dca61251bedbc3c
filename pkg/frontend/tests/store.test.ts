import { describe, expect, it } from 'vitest';

import { serializeInstruction } from '../src/instruction';
import { CanvasStore, bijectionHolds } from '../src/store';

const GOLDEN = 'move {x: 150, y: 400, width: 100, height: 100} ' +
  'to {x: 144, y: 132} and make it a golden retriever';

describe('drawing workflow', () => {
  it('produces the reference instruction from draw-and-type gestures', () => {
    const store = new CanvasStore();
    store.typeText('move ');
    const box = store.drawBox({ x: 150, y: 400, width: 100, height: 100 });
    store.typeText(' to ');
    const star = store.drawStar({ x: 144, y: 132 });
    store.typeText(' and make it a golden retriever');

    expect(box).not.toBeNull();
    expect(star).toBeTruthy();
    expect(serializeInstruction(store.draft, 'px')).toBe(GOLDEN);
    expect(bijectionHolds(store)).toBe(true);
  });

  it('gives the first box a square chip and the first star a star chip', () => {
    const store = new CanvasStore();
    store.drawBox({ x: 0, y: 0, width: 10, height: 10 });
    store.drawStar({ x: 5, y: 5 });
    const [boxShape, starShape] = store.shapes();
    expect(boxShape.symbol).toBe('■');
    expect(boxShape.kind).toBe('box');
    expect(starShape.symbol).toBe('★');
    expect(starShape.kind).toBe('star');
    expect(boxShape.color).not.toBe(starShape.color);
  });

  it('ignores a zero-area drag and shows a hint', () => {
    const store = new CanvasStore();
    expect(store.drawBox({ x: 10, y: 10, width: 0, height: 5 })).toBeNull();
    expect(store.hint).toBeTruthy();
    expect(store.draft).toHaveLength(0);
    expect(store.shapes()).toHaveLength(0);
    // The next successful draw clears the hint.
    store.drawBox({ x: 10, y: 10, width: 5, height: 5 });
    expect(store.hint).toBeNull();
  });

  it('inserts chips at the caret, not at the end', () => {
    const store = new CanvasStore();
    store.typeText('move ');
    store.drawBox({ x: 0, y: 0, width: 10, height: 10 });
    store.typeText(' to the left of ');
    store.caret = 1; // just after "move"
    store.drawStar({ x: 3, y: 4 });
    expect(serializeInstruction(store.draft, 'px')).toBe(
      'move {x: 3, y: 4} {x: 0, y: 0, width: 10, height: 10} to the left of');
  });

  it('assigns distinct symbols to repeated shapes of one kind', () => {
    const store = new CanvasStore();
    for (let i = 0; i < 6; i += 1) {
      store.drawBox({ x: i * 10, y: 0, width: 5, height: 5 });
    }
    const symbols = store.chipSymbols();
    expect(new Set(symbols).size).toBe(6);
    expect(symbols[0]).toBe('■');
    expect(symbols[1]).toBe('◆');
  });
});

describe('chip/shape bijection', () => {
  it('holds after add-chip-then-delete-shape', () => {
    const store = new CanvasStore();
    store.typeText('delete ');
    const symbol = store.drawBox({ x: 1, y: 2, width: 3, height: 4 })!;
    expect(store.chipSymbols()).toEqual([symbol]);

    store.removeShape(symbol);
    expect(store.chipSymbols()).toEqual([]);
    expect(store.shapes()).toEqual([]);
    expect(store.draft.filter((t) => t.kind !== 'text')).toHaveLength(0);
    expect(bijectionHolds(store)).toBe(true);
  });

  it('holds after add-shape-then-delete-chip', () => {
    const store = new CanvasStore();
    const symbol = store.drawStar({ x: 9, y: 9 });
    expect(store.shapes()).toHaveLength(1);

    store.removeChip(symbol);
    expect(store.shapes()).toEqual([]);
    expect(store.chipSymbols()).toEqual([]);
    expect(bijectionHolds(store)).toBe(true);
  });

  it('holds across a randomized edit sequence', () => {
    const store = new CanvasStore();
    let seed = 20260823;
    const random = () => {
      // Linear congruential generator; deterministic across runs.
      seed = (seed * 1664525 + 1013904223) >>> 0;
      return seed / 2 ** 32;
    };

    for (let step = 0; step < 200; step += 1) {
      const roll = random();
      const symbols = store.chipSymbols();
      if (roll < 0.35) {
        store.drawBox({ x: random() * 900, y: random() * 900,
                        width: 1 + random() * 90, height: 1 + random() * 90 });
      } else if (roll < 0.55) {
        store.drawStar({ x: random() * 1000, y: random() * 1000 });
      } else if (roll < 0.7 && symbols.length > 0) {
        store.removeChip(symbols[Math.floor(random() * symbols.length)]);
      } else if (roll < 0.85 && symbols.length > 0) {
        store.removeShape(symbols[Math.floor(random() * symbols.length)]);
      } else {
        store.typeText(' and ');
      }
      expect(bijectionHolds(store)).toBe(true);
      expect(store.shapes()).toHaveLength(
        store.draft.filter((t) => t.kind !== 'text').length);
    }
  });

  it('survives select-tool edits to a drawn shape', () => {
    const store = new CanvasStore();
    const symbol = store.drawBox({ x: 10, y: 10, width: 20, height: 20 })!;
    store.updateShape(symbol, { x: 50, y: 60, width: 70, height: 80 });

    expect(bijectionHolds(store)).toBe(true);
    expect(store.shapes()[0].geometry).toEqual(
      { x: 50, y: 60, width: 70, height: 80 });
    expect(serializeInstruction(store.draft, 'px')).toBe(
      '{x: 50, y: 60, width: 70, height: 80}');
  });

  it('clearDraft removes chips and shapes together', () => {
    const store = new CanvasStore();
    store.typeText('move ');
    store.drawBox({ x: 0, y: 0, width: 5, height: 5 });
    store.drawStar({ x: 1, y: 1 });
    store.clearDraft();
    expect(store.draft).toEqual([]);
    expect(store.shapes()).toEqual([]);
    expect(store.caret).toBe(0);
    expect(bijectionHolds(store)).toBe(true);
  });
});
