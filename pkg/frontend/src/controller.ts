/**
 * Store-mutating flows around the service API.
 *
 * At most one request is in flight; a failed submit keeps the draft and
 * overlay intact and surfaces the raw error as a toast. A successful one
 * clears the overlay, records the diff for highlighting, and exposes the
 * reasoning text.
 */

import { serializeInstruction } from './instruction';
import type { LayoutApi } from './api';
import type { ApplyResponse, Layout } from './types';
import type { CanvasStore } from './store';

export async function startSession(store: CanvasStore, api: LayoutApi,
                                   layout: Layout, width: number,
                                   height: number): Promise<void> {
  store.sessionId = await api.createSession(layout, width, height);
  store.layout = layout;
  store.canvasWidth = width;
  store.canvasHeight = height;
  store.canReload = false;
  store.lastDiff = null;
  store.chainOfThought = null;
}

function applySuccess(store: CanvasStore, response: ApplyResponse): void {
  store.layout = response.layout;
  store.lastDiff = response.diff;
  store.chainOfThought = response.chain_of_thought;
  store.toast = null;
  store.canReload = true;
}

export async function submitInstruction(store: CanvasStore,
                                        api: LayoutApi): Promise<boolean> {
  if (store.pending || store.sessionId === null || store.draftEmpty()) {
    return false;
  }
  const text = serializeInstruction(store.draft, 'px');
  store.pending = true;
  try {
    const response = await api.applyInstruction(store.sessionId, text);
    applySuccess(store, response);
    store.clearDraft();
    return true;
  } catch (error) {
    store.toast = error instanceof Error ? error.message : String(error);
    return false;
  } finally {
    store.pending = false;
  }
}

export async function reloadLast(store: CanvasStore,
                                 api: LayoutApi): Promise<boolean> {
  if (store.pending || store.sessionId === null || !store.canReload) {
    return false;
  }
  store.pending = true;
  try {
    applySuccess(store, await api.reload(store.sessionId));
    return true;
  } catch (error) {
    store.toast = error instanceof Error ? error.message : String(error);
    return false;
  } finally {
    store.pending = false;
  }
}

export async function undoLast(store: CanvasStore,
                               api: LayoutApi): Promise<boolean> {
  if (store.pending || store.sessionId === null) return false;
  store.pending = true;
  try {
    store.layout = await api.undo(store.sessionId);
    store.lastDiff = null;
    store.chainOfThought = null;
    store.toast = null;
    return true;
  } catch (error) {
    store.toast = error instanceof Error ? error.message : String(error);
    return false;
  } finally {
    store.pending = false;
  }
}
