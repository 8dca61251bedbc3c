/** Typed client for the layout service HTTP API. */

import type { ApplyResponse, HistoryEntry, Layout } from './types';

export class ServiceError extends Error {
  status: number;
  errorType: string;
  detail: string;

  constructor(status: number, errorType: string, detail: string) {
    super(`${errorType}: ${detail}`);
    this.name = 'ServiceError';
    this.status = status;
    this.errorType = errorType;
    this.detail = detail;
  }
}

export interface LayoutApi {
  createSession(layout: Layout, width: number, height: number): Promise<string>;
  getLayout(sessionId: string): Promise<Layout>;
  applyInstruction(sessionId: string, instructionText: string): Promise<ApplyResponse>;
  reload(sessionId: string): Promise<ApplyResponse>;
  undo(sessionId: string): Promise<Layout>;
  getHistory(sessionId: string): Promise<HistoryEntry[]>;
  previewUrl(sessionId: string, labels?: boolean): string;
  generate(sessionId: string): Promise<{ blob: Blob; fallback: boolean }>;
}

export class ApiClient implements LayoutApi {
  private baseUrl: string;
  private fetchImpl: typeof fetch;

  constructor(baseUrl = '', fetchImpl: typeof fetch = fetch) {
    this.baseUrl = baseUrl.replace(/\/$/, '');
    this.fetchImpl = fetchImpl;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    return handleJson<T>(response);
  }

  private post<T>(path: string, body?: unknown): Promise<T> {
    return this.request<T>(path, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
  }

  async createSession(layout: Layout, width: number, height: number): Promise<string> {
    const data = await this.post<{ session_id: string }>(
      '/sessions', { layout, width, height });
    return data.session_id;
  }

  getLayout(sessionId: string): Promise<Layout> {
    return this.request<Layout>(`/sessions/${encodeURIComponent(sessionId)}/layout`);
  }

  applyInstruction(sessionId: string, instructionText: string): Promise<ApplyResponse> {
    return this.post<ApplyResponse>(
      `/sessions/${encodeURIComponent(sessionId)}/instruction`,
      { instruction_text: instructionText });
  }

  reload(sessionId: string): Promise<ApplyResponse> {
    return this.post<ApplyResponse>(
      `/sessions/${encodeURIComponent(sessionId)}/reload`);
  }

  async undo(sessionId: string): Promise<Layout> {
    const data = await this.post<{ layout: Layout }>(
      `/sessions/${encodeURIComponent(sessionId)}/undo`);
    return data.layout;
  }

  getHistory(sessionId: string): Promise<HistoryEntry[]> {
    return this.request<HistoryEntry[]>(
      `/sessions/${encodeURIComponent(sessionId)}/history`);
  }

  previewUrl(sessionId: string, labels = true): string {
    const suffix = labels ? '' : '?labels=false';
    return `${this.baseUrl}/sessions/${encodeURIComponent(sessionId)}/preview.svg${suffix}`;
  }

  async generate(sessionId: string): Promise<{ blob: Blob; fallback: boolean }> {
    const response = await this.fetchImpl(
      `${this.baseUrl}/sessions/${encodeURIComponent(sessionId)}/generate`,
      { method: 'POST' });
    if (!response.ok) {
      throw await errorFrom(response);
    }
    return {
      blob: await response.blob(),
      fallback: response.headers.get('X-Clicklayout-Fallback') === 'true',
    };
  }
}

async function handleJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    throw await errorFrom(response);
  }
  return response.json() as Promise<T>;
}

async function errorFrom(response: Response): Promise<ServiceError> {
  let errorType = `HTTP ${response.status}`;
  let detail = response.statusText;
  try {
    const payload = await response.json();
    if (payload && typeof payload.error === 'string') errorType = payload.error;
    if (payload && typeof payload.detail === 'string') detail = payload.detail;
  } catch {
    // Non-JSON error body; keep the status line.
  }
  return new ServiceError(response.status, errorType, detail);
}
