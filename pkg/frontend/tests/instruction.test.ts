import { readFileSync } from 'node:fs';
import { describe, expect, it } from 'vitest';

import {
  draftIsEmpty,
  formatNorm,
  formatPixel,
  roundHalfEven,
  serializeInstruction,
} from '../src/instruction';
import type { InstructionToken, Units } from '../src/types';

interface Vector {
  name: string;
  units: Units;
  canvas: { width: number; height: number };
  tokens: InstructionToken[];
  expected: string;
}

const VECTORS: Vector[] = JSON.parse(readFileSync(
  new URL('../../shared/instruction_vectors.json', import.meta.url), 'utf-8'));

describe('serializeInstruction', () => {
  it('covers the shared test vectors', () => {
    expect(VECTORS.length).toBeGreaterThan(0);
    for (const vector of VECTORS) {
      expect(serializeInstruction(vector.tokens, vector.units),
             vector.name).toBe(vector.expected);
    }
  });

  it('emits the reference instruction byte for byte', () => {
    const golden = VECTORS.find((v) => v.name === 'move-box-to-point-and-rename');
    expect(golden).toBeDefined();
    expect(serializeInstruction(golden!.tokens, golden!.units)).toBe(
      'move {x: 150, y: 400, width: 100, height: 100} ' +
      'to {x: 144, y: 132} and make it a golden retriever');
  });

  it('trims text tokens and drops empty ones', () => {
    const tokens: InstructionToken[] = [
      { kind: 'text', text: '  move ' },
      { kind: 'text', text: '   ' },
      { kind: 'box', x: 10, y: 20, width: 30, height: 40 },
      { kind: 'text', text: ' up  a bit ' },
    ];
    expect(serializeInstruction(tokens, 'px')).toBe(
      'move {x: 10, y: 20, width: 30, height: 40} up  a bit');
  });

  it('renders drag coordinates as whole pixels', () => {
    const tokens: InstructionToken[] = [
      { kind: 'point', x: 143.7, y: 132.2 },
    ];
    expect(serializeInstruction(tokens, 'px')).toBe('{x: 144, y: 132}');
  });
});

describe('number formatting parity with the service', () => {
  it('rounds halfway pixels to even', () => {
    expect(roundHalfEven(0.5)).toBe(0);
    expect(roundHalfEven(1.5)).toBe(2);
    expect(roundHalfEven(2.5)).toBe(2);
    expect(formatPixel(150)).toBe('150');
    expect(formatPixel(149.5)).toBe('150');
    expect(formatPixel(150.5)).toBe('150');
  });

  it('renders normalized values with two decimals', () => {
    expect(formatNorm(0.1)).toBe('0.10');
    expect(formatNorm(0.65)).toBe('0.65');
    expect(formatNorm(0)).toBe('0.00');
    expect(formatNorm(1)).toBe('1.00');
    expect(formatNorm(0.645)).toBe('0.65');
  });

  it('rounds exact halfway hundredths to even', () => {
    // These doubles are exactly representable, so the tie is real.
    expect(formatNorm(0.125)).toBe('0.12');
    expect(formatNorm(0.375)).toBe('0.38');
    expect(formatNorm(0.625)).toBe('0.62');
    expect(formatNorm(0.875)).toBe('0.88');
    expect(formatNorm(1.125)).toBe('1.12');
  });
});

describe('draftIsEmpty', () => {
  it('is true for no tokens or blank text', () => {
    expect(draftIsEmpty([])).toBe(true);
    expect(draftIsEmpty([{ kind: 'text', text: '   ' }])).toBe(true);
  });

  it('is false once text or a reference exists', () => {
    expect(draftIsEmpty([{ kind: 'text', text: 'hi' }])).toBe(false);
    expect(draftIsEmpty([{ kind: 'point', x: 1, y: 2 }])).toBe(false);
  });
});
