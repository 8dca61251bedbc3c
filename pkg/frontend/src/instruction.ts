/**
 * Instruction serialization, byte-compatible with the service.
 *
 * Pixel coordinates render as integers, normalized ones with two decimals;
 * both round halfway cases to even, matching the service's formatter, so
 * the string the UI submits equals what the service would emit for the
 * same tokens.
 */

import type { InstructionToken, Units } from './types';

export function roundHalfEven(value: number): number {
  const floor = Math.floor(value);
  const fraction = value - floor;
  if (fraction > 0.5) return floor + 1;
  if (fraction < 0.5) return floor;
  return floor % 2 === 0 ? floor : floor + 1;
}

export function formatPixel(value: number): string {
  return String(roundHalfEven(value));
}

export function formatNorm(value: number): string {
  // toFixed rounds exact halves up; the only doubles whose second decimal
  // is an exact half end in .125/.375/.625/.875, so special-case those.
  const eighths = value * 8;
  if (Number.isInteger(eighths) && Math.abs(eighths % 2) === 1) {
    const lower = (value * 1000 - 5) / 10;
    const chosen = lower % 2 === 0 ? lower : lower + 1;
    return (chosen / 100).toFixed(2);
  }
  return value.toFixed(2);
}

function renderToken(token: InstructionToken, units: Units): string {
  const coord = units === 'px' ? formatPixel : formatNorm;
  switch (token.kind) {
    case 'text':
      return token.text.trim();
    case 'box':
      return `{x: ${coord(token.x)}, y: ${coord(token.y)}, ` +
        `width: ${coord(token.width)}, height: ${coord(token.height)}}`;
    case 'point':
      return `{x: ${coord(token.x)}, y: ${coord(token.y)}}`;
  }
}

export function serializeInstruction(tokens: InstructionToken[], units: Units): string {
  return tokens
    .map((token) => renderToken(token, units))
    .filter((piece) => piece.length > 0)
    .join(' ');
}

/** True when the draft has neither text with content nor any reference. */
export function draftIsEmpty(tokens: InstructionToken[]): boolean {
  return serializeInstruction(tokens, 'px').length === 0;
}
