import { KeyEvent } from './keymap.js';

// Wire format spoken by the session server: JSON texts over one WebSocket
// connection, one session per connection.  Every request is answered by a
// state message followed by a mesh message, or by a single error message.
// The viewer holds no geometry authority; every rendered mesh comes from
// a mesh message.

export type ParamName = 'theta0' | 'alpha' | 'c0' | 'step_alpha' | 'step_c0';

export type ClientMessage =
  | { type: 'key'; symbol: string; shifted?: boolean }
  | { type: 'set_param'; name: ParamName; value: number }
  | { type: 'reset' }
  | { type: 'get_state' };

export interface StateMessage {
  type: 'state';
  orientation: number[]; // 16 row-major entries of the 4x4 rotation
  alpha: number;
  beta: number;
  c0: number;
  theta0: number;
}

export interface MeshMessage {
  type: 'mesh';
  vertices: number[][]; // [x, y, z] per cut point
  vertex_source_edges: number[];
  vertex_params: number[];
  edges: number[][]; // [i, j] vertex index pairs
  edge_source_faces: number[];
  faces: number[][]; // convex planar loops, >= 3 indices each
  face_source_cells: number[];
}

export interface ErrorMessage {
  type: 'error';
  code: string;
  detail: string;
}

export type ServerMessage = StateMessage | MeshMessage | ErrorMessage;

function isNumberArray(x: unknown): x is number[] {
  return Array.isArray(x) && x.every((v) => typeof v === 'number');
}

function isIndexListArray(x: unknown, arity: number): x is number[][] {
  return Array.isArray(x) && x.every((row) => isNumberArray(row) && row.length === arity);
}

export function isStateMessage(m: unknown): m is StateMessage {
  if (typeof m !== 'object' || m === null) {
    return false;
  }
  const r = m as Record<string, unknown>;
  return (
    r.type === 'state' &&
    isNumberArray(r.orientation) &&
    r.orientation.length === 16 &&
    typeof r.alpha === 'number' &&
    typeof r.beta === 'number' &&
    typeof r.c0 === 'number' &&
    typeof r.theta0 === 'number'
  );
}

export function isMeshMessage(m: unknown): m is MeshMessage {
  if (typeof m !== 'object' || m === null) {
    return false;
  }
  const r = m as Record<string, unknown>;
  return (
    r.type === 'mesh' &&
    isIndexListArray(r.vertices, 3) &&
    isNumberArray(r.vertex_source_edges) &&
    isNumberArray(r.vertex_params) &&
    isIndexListArray(r.edges, 2) &&
    isNumberArray(r.edge_source_faces) &&
    Array.isArray(r.faces) &&
    r.faces.every((f) => isNumberArray(f) && f.length >= 3) &&
    isNumberArray(r.face_source_cells)
  );
}

export function isErrorMessage(m: unknown): m is ErrorMessage {
  if (typeof m !== 'object' || m === null) {
    return false;
  }
  const r = m as Record<string, unknown>;
  return r.type === 'error' && typeof r.code === 'string' && typeof r.detail === 'string';
}

// Parses one server text frame; null when the text is not a well-formed
// server message.
export function parseServerMessage(text: string): ServerMessage | null {
  let data: unknown;
  try {
    data = JSON.parse(text);
  } catch {
    return null;
  }
  if (isStateMessage(data) || isMeshMessage(data) || isErrorMessage(data)) {
    return data;
  }
  return null;
}

// Structural socket interface so the client runs on the browser WebSocket
// and on node implementations alike.  Handler params stay loose because the
// two platforms disagree on their event types.
type SocketHandler = ((ev?: any) => void) | null;

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: SocketHandler;
  onmessage: SocketHandler;
  onclose: SocketHandler;
  onerror: SocketHandler;
}

export type SocketFactory = (url: string) => SocketLike;

export interface SessionCallbacks {
  onState?(state: StateMessage): void;
  onMesh?(mesh: MeshMessage): void;
  onError?(error: ErrorMessage): void;
  onBadReply?(text: string): void;
  onOpen?(): void;
  onClose?(): void;
}

export class SessionClient {
  private socket: SocketLike;

  constructor(
    url: string,
    private callbacks: SessionCallbacks = {},
    factory: SocketFactory = (u) => new WebSocket(u),
  ) {
    this.socket = factory(url);
    this.socket.onopen = () => this.callbacks.onOpen?.();
    this.socket.onmessage = (ev) => this.dispatch(String(ev?.data));
    this.socket.onclose = () => this.callbacks.onClose?.();
    this.socket.onerror = () => {};
  }

  private dispatch(text: string): void {
    const msg = parseServerMessage(text);
    if (msg === null) {
      this.callbacks.onBadReply?.(text);
    } else if (msg.type === 'state') {
      this.callbacks.onState?.(msg);
    } else if (msg.type === 'mesh') {
      this.callbacks.onMesh?.(msg);
    } else {
      this.callbacks.onError?.(msg);
    }
  }

  send(message: ClientMessage): void {
    this.socket.send(JSON.stringify(message));
  }

  sendKey(ev: KeyEvent): void {
    if (ev.shifted) {
      this.send({ type: 'key', symbol: ev.symbol, shifted: true });
    } else {
      this.send({ type: 'key', symbol: ev.symbol });
    }
  }

  setParam(name: ParamName, value: number): void {
    this.send({ type: 'set_param', name, value });
  }

  reset(): void {
    this.send({ type: 'reset' });
  }

  getState(): void {
    this.send({ type: 'get_state' });
  }

  close(): void {
    this.socket.close();
  }
}
