/**
 * DOM shell: toolbar, canvas, and the instruction form with inline chips.
 *
 * Typed text accumulates in a plain input; committing it (on draw or
 * submit) appends it to the draft so chips land at the spot where the
 * user stopped typing, reading like words in the sentence.
 */

import { reloadLast, startSession, submitInstruction, undoLast } from './controller';
import { drawLayout, drawOverlay } from './render';
import type { LayoutApi } from './api';
import type { CanvasStore, Tool } from './store';
import type { Layout } from './types';

interface Elements {
  canvas: HTMLCanvasElement;
  toolbar: HTMLDivElement;
  chips: HTMLDivElement;
  input: HTMLInputElement;
  submit: HTMLButtonElement;
  reload: HTMLButtonElement;
  undo: HTMLButtonElement;
  reasoning: HTMLDetailsElement;
  toast: HTMLDivElement;
}

export function setupApp(root: HTMLElement, store: CanvasStore, api: LayoutApi,
                         layout: Layout, width = 1000, height = 1000): void {
  root.innerHTML = `
    <div class="toolbar"></div>
    <canvas width="${width}" height="${height}"></canvas>
    <div class="instruction">
      <div class="chips"></div>
      <input type="text" placeholder="type an instruction; draw to insert a reference" />
      <button class="submit">apply</button>
      <button class="reload" disabled>reload</button>
      <button class="undo">undo</button>
    </div>
    <details class="reasoning"><summary>reasoning</summary><pre></pre></details>
    <div class="toast" hidden></div>
  `;
  const els: Elements = {
    canvas: root.querySelector('canvas')!,
    toolbar: root.querySelector('.toolbar')!,
    chips: root.querySelector('.chips')!,
    input: root.querySelector('input')!,
    submit: root.querySelector('.submit')!,
    reload: root.querySelector('.reload')!,
    undo: root.querySelector('.undo')!,
    reasoning: root.querySelector('.reasoning')!,
    toast: root.querySelector('.toast')!,
  };

  for (const tool of ['select', 'box', 'star', 'reload'] as Tool[]) {
    const button = document.createElement('button');
    button.textContent = tool;
    button.dataset.tool = tool;
    button.addEventListener('click', () => {
      if (tool === 'reload') {
        void reloadLast(store, api).then(() => repaint(store, els));
        return;
      }
      store.setTool(tool);
      repaint(store, els);
    });
    els.toolbar.appendChild(button);
  }

  wireCanvas(store, els);
  els.input.addEventListener('keydown', (event) => {
    if (event.key === 'Enter') els.submit.click();
  });
  els.submit.addEventListener('click', () => {
    commitTypedText(store, els);
    void submitInstruction(store, api).then(() => repaint(store, els));
  });
  els.undo.addEventListener('click', () => {
    void undoLast(store, api).then(() => repaint(store, els));
  });

  void startSession(store, api, layout, width, height)
    .then(() => repaint(store, els))
    .catch((error: Error) => {
      store.toast = error.message;
      repaint(store, els);
    });
}

function commitTypedText(store: CanvasStore, els: Elements): void {
  if (els.input.value.length > 0) {
    store.typeText(` ${els.input.value} `);
    els.input.value = '';
  }
}

function wireCanvas(store: CanvasStore, els: Elements): void {
  let dragStart: { x: number; y: number } | null = null;

  const position = (event: MouseEvent) => {
    const rect = els.canvas.getBoundingClientRect();
    return { x: event.clientX - rect.left, y: event.clientY - rect.top };
  };

  els.canvas.addEventListener('mousedown', (event) => {
    dragStart = position(event);
  });

  els.canvas.addEventListener('mouseup', (event) => {
    if (dragStart === null) return;
    const end = position(event);
    const start = dragStart;
    dragStart = null;
    if (store.tool === 'box') {
      commitTypedText(store, els);
      store.drawBox({
        x: Math.min(start.x, end.x),
        y: Math.min(start.y, end.y),
        width: Math.abs(end.x - start.x),
        height: Math.abs(end.y - start.y),
      });
    } else if (store.tool === 'star') {
      commitTypedText(store, els);
      store.drawStar(end);
    }
    repaint(store, els);
  });
}

export function repaint(store: CanvasStore, els: Elements): void {
  const ctx = els.canvas.getContext('2d');
  if (ctx && store.layout) {
    drawLayout(ctx, store.layout, store.lastDiff);
    drawOverlay(ctx, store.shapes());
  }

  els.chips.textContent = '';
  for (const token of store.draft) {
    const span = document.createElement('span');
    if (token.kind === 'text') {
      span.textContent = token.text;
    } else {
      span.className = 'chip';
      span.textContent = `${token.symbol} `;
      const shape = store.shapes().find((s) => s.symbol === token.symbol);
      if (shape) span.style.color = shape.color;
      const remove = document.createElement('button');
      remove.textContent = '×';
      remove.addEventListener('click', () => {
        store.removeChip(token.symbol!);
        repaint(store, els);
      });
      span.appendChild(remove);
    }
    els.chips.appendChild(span);
  }

  els.submit.disabled = store.pending;
  els.reload.disabled = store.pending || !store.canReload;
  els.undo.disabled = store.pending;
  els.input.disabled = store.pending;

  const pre = els.reasoning.querySelector('pre');
  if (pre) pre.textContent = store.chainOfThought ?? '';
  els.toast.hidden = store.toast === null;
  els.toast.textContent = store.toast ?? '';
  if (store.hint !== null) {
    els.toast.hidden = false;
    els.toast.textContent = store.hint;
  }

  for (const button of els.toolbar.querySelectorAll('button')) {
    button.classList.toggle('active', button.dataset.tool === store.tool);
  }
}
