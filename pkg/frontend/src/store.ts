/**
 * Client-side canvas state.
 *
 * The instruction draft is the single source of truth for drawn references:
 * overlay shapes are a view of the draft's box/point chips, so a chip and
 * its shape can never drift apart. Deleting either one goes through the
 * same code path.
 */

import { draftIsEmpty } from './instruction';
import type {
  BoxGeometry,
  InstructionToken,
  Layout,
  LayoutDiff,
  PointGeometry,
} from './types';

export type Tool = 'select' | 'box' | 'star' | 'reload';

export interface OverlayShape {
  symbol: string;
  color: string;
  kind: 'box' | 'star';
  geometry: BoxGeometry | PointGeometry;
}

const BOX_SYMBOLS = ['■', '◆', '▲', '●'];
const STAR_SYMBOLS = ['★', '☆', '✦', '✧'];
export const CHIP_COLORS = ['#0bc9cd', '#e6194b', '#3cb44b', '#f58231',
                            '#911eb4', '#4363d8'];

export class CanvasStore {
  sessionId: string | null = null;
  layout: Layout | null = null;
  canvasWidth = 1000;
  canvasHeight = 1000;

  tool: Tool = 'select';
  draft: InstructionToken[] = [];
  caret = 0;

  pending = false;
  canReload = false;
  lastDiff: LayoutDiff | null = null;
  chainOfThought: string | null = null;
  hint: string | null = null;
  toast: string | null = null;

  private colors = new Map<string, string>();
  private allocated = 0;

  setTool(tool: Tool): void {
    this.tool = tool;
  }

  /** Chips in draft order; this IS the canvas overlay. */
  shapes(): OverlayShape[] {
    const shapes: OverlayShape[] = [];
    for (const token of this.draft) {
      if (token.kind === 'text' || token.symbol === undefined) continue;
      shapes.push({
        symbol: token.symbol,
        color: this.colors.get(token.symbol) ?? CHIP_COLORS[0],
        kind: token.kind === 'box' ? 'box' : 'star',
        geometry: token.kind === 'box'
          ? { x: token.x, y: token.y, width: token.width, height: token.height }
          : { x: token.x, y: token.y },
      });
    }
    return shapes;
  }

  chipSymbols(): string[] {
    return this.shapes().map((shape) => shape.symbol);
  }

  /** Draw a box reference; returns its symbol, or null for a zero-area drag. */
  drawBox(rect: BoxGeometry): string | null {
    if (rect.width <= 0 || rect.height <= 0) {
      this.hint = 'drag out a box with some area';
      return null;
    }
    this.hint = null;
    return this.insertChip({ kind: 'box', ...rect }, BOX_SYMBOLS);
  }

  /** Drop a star (point) reference; always succeeds. */
  drawStar(point: PointGeometry): string {
    this.hint = null;
    return this.insertChip({ kind: 'point', ...point }, STAR_SYMBOLS);
  }

  private insertChip(token: InstructionToken & { kind: 'box' | 'point' },
                     pool: string[]): string {
    const symbol = this.nextSymbol(pool);
    this.colors.set(symbol, CHIP_COLORS[this.allocated % CHIP_COLORS.length]);
    this.allocated += 1;
    this.draft.splice(this.caret, 0, { ...token, symbol });
    this.caret += 1;
    return symbol;
  }

  private nextSymbol(pool: string[]): string {
    const used = new Set(this.chipSymbols());
    for (const symbol of pool) {
      if (!used.has(symbol)) return symbol;
    }
    let n = 2;
    while (used.has(`${pool[0]}${n}`)) n += 1;
    return `${pool[0]}${n}`;
  }

  /** Append typed text at the caret, merging into an adjacent text token. */
  typeText(text: string): void {
    const before = this.draft[this.caret - 1];
    if (before !== undefined && before.kind === 'text') {
      before.text += text;
      return;
    }
    this.draft.splice(this.caret, 0, { kind: 'text', text });
    this.caret += 1;
  }

  /** Remove a chip (and with it the overlay shape). */
  removeChip(symbol: string): void {
    const index = this.draft.findIndex(
      (token) => token.kind !== 'text' && token.symbol === symbol);
    if (index < 0) return;
    this.draft.splice(index, 1);
    if (this.caret > index) this.caret -= 1;
    this.colors.delete(symbol);
  }

  /** Remove an overlay shape (and with it the chip). Same path either way. */
  removeShape(symbol: string): void {
    this.removeChip(symbol);
  }

  /** Select tool: reposition or resize a drawn shape before submission. */
  updateShape(symbol: string, geometry: BoxGeometry | PointGeometry): void {
    const index = this.draft.findIndex(
      (token) => token.kind !== 'text' && token.symbol === symbol);
    if (index < 0) return;
    const token = this.draft[index];
    if (token.kind === 'box' && 'width' in geometry) {
      this.draft[index] = { ...token, ...geometry };
    } else if (token.kind === 'point') {
      this.draft[index] = { ...token, x: geometry.x, y: geometry.y };
    }
  }

  draftEmpty(): boolean {
    return draftIsEmpty(this.draft);
  }

  clearDraft(): void {
    this.draft = [];
    this.caret = 0;
    this.colors.clear();
    this.allocated = 0;
  }
}

/** Every shape has exactly one chip and vice versa (they share symbols). */
export function bijectionHolds(store: CanvasStore): boolean {
  const chipSymbols: (string | undefined)[] = [];
  for (const token of store.draft) {
    if (token.kind !== 'text') chipSymbols.push(token.symbol);
  }
  // A chip without a symbol would serialize but have no shape handle.
  if (chipSymbols.some((symbol) => symbol === undefined)) return false;
  if (new Set(chipSymbols).size !== chipSymbols.length) return false;
  const shapeSymbols = store.shapes().map((shape) => shape.symbol);
  return chipSymbols.length === shapeSymbols.length &&
    chipSymbols.every((symbol, i) => symbol === shapeSymbols[i]);
}
