import { ApiClient } from './api';
import { setupApp } from './app';
import { CanvasStore } from './store';
import type { Layout } from './types';

const API_BASE: string = (globalThis as any).__API_BASE__ ?? 'http://127.0.0.1:8000';

const DEMO_LAYOUT: Layout = {
  prompt: 'A dog standing by a car.',
  boxes: [
    { unique_id: 0, name: 'dog', box: { x: 0.75, y: 0.8, width: 0.2, height: 0.2 } },
    { unique_id: 1, name: 'car', box: { x: 0.1, y: 0.65, width: 0.6, height: 0.35 } },
  ],
};

const root = document.getElementById('app');
if (root) {
  setupApp(root, new CanvasStore(), new ApiClient(API_BASE), DEMO_LAYOUT);
}
