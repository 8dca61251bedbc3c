/** Canvas drawing for the current layout, diff highlights, and the overlay. */

import type { OverlayShape } from './store';
import type { BoxGeometry, Layout, LayoutDiff } from './types';

// Same id-keyed palette the service uses for its SVG previews.
export const BOX_PALETTE = ['#e6194b', '#3cb44b', '#4363d8', '#f58231',
                            '#911eb4', '#46b8b8', '#c09b10', '#f032e6'];

export function boxColor(uniqueId: number): string {
  return BOX_PALETTE[uniqueId % BOX_PALETTE.length];
}

export function touchedIds(diff: LayoutDiff | null): Set<number> {
  const ids = new Set<number>();
  if (!diff) return ids;
  for (const entry of diff.moved) ids.add(entry.unique_id);
  for (const box of diff.added) ids.add(box.unique_id);
  for (const id of diff.removed) ids.add(id);
  for (const entry of diff.relabeled) ids.add(entry.unique_id);
  return ids;
}

export function drawLayout(ctx: CanvasRenderingContext2D, layout: Layout,
                           diff: LayoutDiff | null = null): void {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = '#ffffff';
  ctx.fillRect(0, 0, width, height);
  ctx.font = '14px sans-serif';

  const highlighted = touchedIds(diff);
  for (const item of layout.boxes) {
    const x = item.box.x * width;
    const y = item.box.y * height;
    const w = item.box.width * width;
    const h = item.box.height * height;
    const color = boxColor(item.unique_id);

    ctx.strokeStyle = color;
    ctx.lineWidth = highlighted.has(item.unique_id) ? 4 : 2;
    ctx.strokeRect(x, y, w, h);
    ctx.fillStyle = color;
    ctx.globalAlpha = 0.15;
    ctx.fillRect(x, y, w, h);
    ctx.globalAlpha = 1;
    ctx.fillText(`${item.name} #${item.unique_id}`, x + 4, y + 16);
  }
}

export function drawOverlay(ctx: CanvasRenderingContext2D,
                            shapes: OverlayShape[]): void {
  ctx.font = '18px sans-serif';
  for (const shape of shapes) {
    ctx.strokeStyle = shape.color;
    ctx.fillStyle = shape.color;
    ctx.lineWidth = 2;
    if (shape.kind === 'box') {
      const box = shape.geometry as BoxGeometry;
      ctx.setLineDash([6, 4]);
      ctx.strokeRect(box.x, box.y, box.width, box.height);
      ctx.setLineDash([]);
      ctx.fillText(shape.symbol, box.x + 4, box.y + 20);
    } else {
      ctx.fillText(shape.symbol, shape.geometry.x - 8, shape.geometry.y + 8);
    }
  }
}
