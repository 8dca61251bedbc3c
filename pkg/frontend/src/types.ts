/** Wire types shared with the layout service. Field names match its JSON. */

export type Units = 'px' | 'norm';

export interface BoxGeometry {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface PointGeometry {
  x: number;
  y: number;
}

export type InstructionToken =
  | { kind: 'text'; text: string }
  | ({ kind: 'box'; symbol?: string } & BoxGeometry)
  | ({ kind: 'point'; symbol?: string } & PointGeometry);

export interface LayoutBox {
  unique_id: number;
  name: string;
  box: BoxGeometry;
}

export interface Layout {
  prompt: string;
  boxes: LayoutBox[];
}

export interface MovedBox {
  unique_id: number;
  before: BoxGeometry;
  after: BoxGeometry;
}

export interface Relabeled {
  unique_id: number;
  before: string;
  after: string;
}

export interface LayoutDiff {
  moved: MovedBox[];
  added: LayoutBox[];
  removed: number[];
  relabeled: Relabeled[];
  prompt_changed: boolean;
}

export interface ApplyResponse {
  layout: Layout;
  chain_of_thought: string;
  diff: LayoutDiff;
}

export interface HistoryEntry {
  instruction_text: string;
  chain_of_thought: string;
  before: Layout;
  after: Layout;
  timestamp: number;
}
