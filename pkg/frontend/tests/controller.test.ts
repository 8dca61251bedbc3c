import { describe, expect, it } from 'vitest';

import { reloadLast, startSession, submitInstruction, undoLast } from '../src/controller';
import { CanvasStore } from '../src/store';
import type { LayoutApi } from '../src/api';
import type { ApplyResponse, Layout } from '../src/types';

const LAYOUT: Layout = {
  prompt: 'A dog in a park.',
  boxes: [
    { unique_id: 0, name: 'dog', box: { x: 0.15, y: 0.4, width: 0.1, height: 0.1 } },
  ],
};

const RESPONSE: ApplyResponse = {
  layout: {
    prompt: 'A scene with golden retriever.',
    boxes: [
      { unique_id: 0, name: 'golden retriever',
        box: { x: 0.094, y: 0.082, width: 0.1, height: 0.1 } },
    ],
  },
  chain_of_thought: 'Q: Which operation is being performed? A: Move, Change.',
  diff: {
    moved: [{ unique_id: 0,
              before: { x: 0.15, y: 0.4, width: 0.1, height: 0.1 },
              after: { x: 0.094, y: 0.082, width: 0.1, height: 0.1 } }],
    added: [], removed: [],
    relabeled: [{ unique_id: 0, before: 'dog', after: 'golden retriever' }],
    prompt_changed: true,
  },
};

interface FakeApi extends LayoutApi {
  applied: string[];
  reloads: number;
  undos: number;
}

function fakeApi(overrides: Partial<LayoutApi> = {}): FakeApi {
  const api: FakeApi = {
    applied: [],
    reloads: 0,
    undos: 0,
    async createSession() { return 'session-1'; },
    async getLayout() { return LAYOUT; },
    async applyInstruction(_id, text) {
      api.applied.push(text);
      return RESPONSE;
    },
    async reload() {
      api.reloads += 1;
      return RESPONSE;
    },
    async undo() {
      api.undos += 1;
      return LAYOUT;
    },
    async getHistory() { return []; },
    previewUrl() { return '/preview.svg'; },
    async generate() { return { blob: new Blob(), fallback: true }; },
    ...overrides,
  };
  return api;
}

async function readyStore(api: LayoutApi): Promise<CanvasStore> {
  const store = new CanvasStore();
  await startSession(store, api, LAYOUT, 1000, 1000);
  return store;
}

function draftGolden(store: CanvasStore): void {
  store.typeText('move ');
  store.drawBox({ x: 150, y: 400, width: 100, height: 100 });
  store.typeText(' to ');
  store.drawStar({ x: 144, y: 132 });
  store.typeText(' and make it a golden retriever');
}

describe('submitInstruction', () => {
  it('sends the serialized draft and applies the response', async () => {
    const api = fakeApi();
    const store = await readyStore(api);
    draftGolden(store);

    expect(await submitInstruction(store, api)).toBe(true);
    expect(api.applied).toEqual([
      'move {x: 150, y: 400, width: 100, height: 100} ' +
      'to {x: 144, y: 132} and make it a golden retriever',
    ]);
    expect(store.layout).toEqual(RESPONSE.layout);
    expect(store.lastDiff).toEqual(RESPONSE.diff);
    expect(store.chainOfThought).toBe(RESPONSE.chain_of_thought);
    // Success clears the overlay along with the draft.
    expect(store.draft).toEqual([]);
    expect(store.shapes()).toEqual([]);
    expect(store.canReload).toBe(true);
    expect(store.toast).toBeNull();
  });

  it('does nothing for an empty draft', async () => {
    const api = fakeApi();
    const store = await readyStore(api);
    expect(await submitInstruction(store, api)).toBe(false);
    store.typeText('   ');
    expect(await submitInstruction(store, api)).toBe(false);
    expect(api.applied).toEqual([]);
  });

  it('keeps the draft and shows the raw error when the service fails', async () => {
    const api = fakeApi({
      async applyInstruction() {
        throw new Error('NoMatchError: reference box overlaps no object');
      },
    });
    const store = await readyStore(api);
    draftGolden(store);
    const draftBefore = [...store.draft];

    expect(await submitInstruction(store, api)).toBe(false);
    expect(store.draft).toEqual(draftBefore);
    expect(store.shapes()).toHaveLength(2);
    expect(store.toast).toBe('NoMatchError: reference box overlaps no object');
    expect(store.layout).toEqual(LAYOUT);
    expect(store.canReload).toBe(false);
    expect(store.pending).toBe(false);
  });

  it('allows only one in-flight request', async () => {
    let release: (value: ApplyResponse) => void = () => {};
    const api = fakeApi({
      applyInstruction(_id, text) {
        (api as FakeApi).applied.push(text);
        return new Promise<ApplyResponse>((resolve) => { release = resolve; });
      },
    });
    const store = await readyStore(api);
    draftGolden(store);

    const first = submitInstruction(store, api);
    expect(store.pending).toBe(true);
    expect(await submitInstruction(store, api)).toBe(false);

    release(RESPONSE);
    expect(await first).toBe(true);
    expect((api as FakeApi).applied).toHaveLength(1);
    expect(store.pending).toBe(false);
  });
});

describe('reloadLast', () => {
  it('is unavailable until an instruction has succeeded', async () => {
    const api = fakeApi();
    const store = await readyStore(api);
    expect(await reloadLast(store, api)).toBe(false);
    expect(api.reloads).toBe(0);

    draftGolden(store);
    await submitInstruction(store, api);
    expect(await reloadLast(store, api)).toBe(true);
    expect(api.reloads).toBe(1);
  });

  it('keeps state and toasts on failure', async () => {
    const api = fakeApi({
      async reload() { throw new Error('TransportError: backend unreachable'); },
    });
    const store = await readyStore(api);
    draftGolden(store);
    await submitInstruction(store, api);
    const layoutBefore = store.layout;

    expect(await reloadLast(store, api)).toBe(false);
    expect(store.layout).toEqual(layoutBefore);
    expect(store.toast).toBe('TransportError: backend unreachable');
  });
});

describe('undoLast', () => {
  it('restores the returned layout and clears the diff', async () => {
    const api = fakeApi();
    const store = await readyStore(api);
    draftGolden(store);
    await submitInstruction(store, api);

    expect(await undoLast(store, api)).toBe(true);
    expect(api.undos).toBe(1);
    expect(store.layout).toEqual(LAYOUT);
    expect(store.lastDiff).toBeNull();
    expect(store.chainOfThought).toBeNull();
  });
});
