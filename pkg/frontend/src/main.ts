import * as THREE from 'three';
import { formatError, makeHud } from './hud.js';
import { normalizeKey } from './keymap.js';
import { KeyRepeater } from './keyrepeat.js';
import { SessionClient } from './protocol.js';
import { MeshView } from './render.js';

export interface ViewerSettings {
  serverUrl: string;
  camera: { position: [number, number, number]; target: [number, number, number]; fov: number };
  repeatIntervalMs: number;
}

export const DEFAULT_SETTINGS: ViewerSettings = {
  serverUrl: 'ws://127.0.0.1:8765',
  camera: { position: [0, 0, 5], target: [0, 0, 0], fov: 45 },
  repeatIntervalMs: 30,
};

export function startViewer(container: HTMLElement, settings: ViewerSettings = DEFAULT_SETTINGS) {
  const scene = new THREE.Scene();
  scene.background = new THREE.Color(0x101014);

  const width = container.clientWidth || 1;
  const height = container.clientHeight || 1;
  const camera = new THREE.PerspectiveCamera(settings.camera.fov, width / height, 0.1, 100);
  camera.position.set(...settings.camera.position);
  camera.lookAt(new THREE.Vector3(...settings.camera.target));

  const renderer = new THREE.WebGLRenderer({ antialias: true });
  renderer.setPixelRatio(window.devicePixelRatio);
  renderer.setSize(width, height);
  container.appendChild(renderer.domElement);

  scene.add(new THREE.AmbientLight(0xffffff, 0.7));
  const sun = new THREE.DirectionalLight(0xffffff, 1.4);
  sun.position.set(3, 4, 5);
  scene.add(sun);

  const view = new MeshView();
  scene.add(view.group);

  const hud = makeHud(container);

  const client = new SessionClient(settings.serverUrl, {
    onOpen: () => client.getState(),
    onState: (state) => hud.setState(state),
    onMesh: (mesh) => {
      try {
        view.update(mesh);
        hud.clearError();
      } catch (err) {
        hud.showError(String(err));
      }
    },
    onError: (error) => hud.showError(formatError(error)),
    onBadReply: () => hud.showError('unreadable server reply'),
    onClose: () => hud.showError(`connection to ${settings.serverUrl} closed`),
  });

  const repeater = new KeyRepeater((ev) => client.sendKey(ev), settings.repeatIntervalMs);

  window.addEventListener('keydown', (ev) => {
    if (ev.repeat) {
      return; // the repeater runs its own clock
    }
    const key = normalizeKey(ev.key, ev.shiftKey);
    if (key !== null) {
      ev.preventDefault();
      repeater.press(ev.code, key);
    }
  });
  window.addEventListener('keyup', (ev) => repeater.release(ev.code));
  window.addEventListener('blur', () => repeater.stop());

  window.addEventListener('resize', () => {
    const w = container.clientWidth || 1;
    const h = container.clientHeight || 1;
    camera.aspect = w / h;
    camera.updateProjectionMatrix();
    renderer.setSize(w, h);
  });

  renderer.setAnimationLoop(() => renderer.render(scene, camera));
  return { scene, camera, renderer, view, client, repeater };
}

if (typeof document !== 'undefined') {
  const container = document.getElementById('viewer');
  if (container !== null) {
    const params = new URLSearchParams(window.location.search);
    const serverUrl = params.get('server') ?? DEFAULT_SETTINGS.serverUrl;
    startViewer(container, { ...DEFAULT_SETTINGS, serverUrl });
  }
}
