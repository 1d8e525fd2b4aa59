import { describe, expect, it } from 'vitest';
import {
  ErrorMessage,
  MeshMessage,
  parseServerMessage,
  ServerMessage,
  SessionClient,
  SocketLike,
  StateMessage,
} from '../src/protocol';

// Reply texts in the exact shape the server produces.
const STATE_TEXT =
  '{"type":"state","orientation":[1.0,0.0,0.0,0.0,0.0,1.0,0.0,0.0,0.0,0.0,1.0,0.0,0.0,0.0,0.0,1.0],' +
  '"alpha":0.09817477042468103,"beta":0.09817477042468103,"c0":0.0,"theta0":0.19634954084936207}';
const MESH_TEXT =
  '{"type":"mesh","vertices":[[-0.8,-0.46188021535170065,-0.32659863237109044],' +
  '[0.8,-0.46188021535170065,-0.32659863237109044],[0.0,0.9237604307034013,-0.32659863237109044],' +
  '[0.0,0.0,0.9797958971132712]],"vertex_source_edges":[3,6,8,9],' +
  '"vertex_params":[0.19999999999999998,0.19999999999999998,0.19999999999999998,0.19999999999999998],' +
  '"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]],"edge_source_faces":[2,4,5,7,8,9],' +
  '"faces":[[0,2,1],[0,1,3],[0,3,2],[1,2,3]],"face_source_cells":[1,2,3,4]}';
const ERROR_TEXT = '{"type":"error","code":"unknown_key","detail":"unknown key symbol \'q\'"}';

describe('parseServerMessage', () => {
  it('parses a state reply', () => {
    const msg = parseServerMessage(STATE_TEXT);
    expect(msg?.type).toBe('state');
    expect((msg as StateMessage).orientation).toHaveLength(16);
    expect((msg as StateMessage).theta0).toBeCloseTo(Math.PI / 16, 12);
  });

  it('parses a mesh reply', () => {
    const msg = parseServerMessage(MESH_TEXT);
    expect(msg?.type).toBe('mesh');
    const mesh = msg as MeshMessage;
    expect(mesh.vertices).toHaveLength(4);
    expect(mesh.edges).toHaveLength(6);
    expect(mesh.faces).toHaveLength(4);
  });

  it('parses an error reply', () => {
    const msg = parseServerMessage(ERROR_TEXT);
    expect(msg?.type).toBe('error');
    expect((msg as ErrorMessage).code).toBe('unknown_key');
  });

  it('rejects non-JSON, non-objects, and unknown shapes', () => {
    expect(parseServerMessage('not json')).toBeNull();
    expect(parseServerMessage('[1,2,3]')).toBeNull();
    expect(parseServerMessage('"state"')).toBeNull();
    expect(parseServerMessage('{"type":"warp"}')).toBeNull();
    expect(parseServerMessage('{"type":"state","orientation":[1,2,3]}')).toBeNull();
    expect(parseServerMessage('{"type":"mesh","vertices":[[0,0]]}')).toBeNull();
  });
});

class FakeSocket implements SocketLike {
  sent: string[] = [];
  closed = false;
  onopen: SocketLike['onopen'] = null;
  onmessage: SocketLike['onmessage'] = null;
  onclose: SocketLike['onclose'] = null;
  onerror: SocketLike['onerror'] = null;

  send(data: string): void {
    this.sent.push(data);
  }

  close(): void {
    this.closed = true;
  }

  receive(text: string): void {
    this.onmessage?.({ data: text });
  }
}

function makeClient(callbacks: ConstructorParameters<typeof SessionClient>[1] = {}) {
  const socket = new FakeSocket();
  const client = new SessionClient('ws://example.test', callbacks, () => socket);
  return { socket, client };
}

describe('SessionClient', () => {
  it('serializes key events without a shifted field when unshifted', () => {
    const { socket, client } = makeClient();
    client.sendKey({ symbol: '4', shifted: false });
    client.sendKey({ symbol: 'c', shifted: true });
    expect(socket.sent).toEqual([
      '{"type":"key","symbol":"4"}',
      '{"type":"key","symbol":"c","shifted":true}',
    ]);
  });

  it('serializes parameter updates, reset, and state requests', () => {
    const { socket, client } = makeClient();
    client.setParam('c0', 0.25);
    client.reset();
    client.getState();
    expect(socket.sent).toEqual([
      '{"type":"set_param","name":"c0","value":0.25}',
      '{"type":"reset"}',
      '{"type":"get_state"}',
    ]);
  });

  it('routes replies to the matching callback', () => {
    const got: string[] = [];
    const { socket } = makeClient({
      onState: (s: StateMessage) => got.push(`state ${s.c0}`),
      onMesh: (m: MeshMessage) => got.push(`mesh ${m.vertices.length}`),
      onError: (e: ErrorMessage) => got.push(`error ${e.code}`),
      onBadReply: (text: string) => got.push(`bad ${text}`),
    });
    socket.receive(STATE_TEXT);
    socket.receive(MESH_TEXT);
    socket.receive(ERROR_TEXT);
    socket.receive('garbage');
    expect(got).toEqual(['state 0', 'mesh 4', 'error unknown_key', 'bad garbage']);
  });

  it('signals open and close', () => {
    const got: string[] = [];
    const { socket, client } = makeClient({
      onOpen: () => got.push('open'),
      onClose: () => got.push('close'),
    });
    socket.onopen?.();
    socket.onclose?.();
    client.close();
    expect(got).toEqual(['open', 'close']);
    expect(socket.closed).toBe(true);
  });
});

// Keeps the ServerMessage union closed over the three reply kinds.
function classify(m: ServerMessage): string {
  switch (m.type) {
    case 'state':
      return 'state';
    case 'mesh':
      return 'mesh';
    case 'error':
      return 'error';
  }
}

describe('ServerMessage union', () => {
  it('is exhaustive across reply kinds', () => {
    for (const text of [STATE_TEXT, MESH_TEXT, ERROR_TEXT]) {
      const msg = parseServerMessage(text);
      expect(msg).not.toBeNull();
      expect(classify(msg as ServerMessage)).toBe((msg as ServerMessage).type);
    }
  });
});
