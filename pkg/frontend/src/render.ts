import * as THREE from 'three';
import { isMeshMessage, MeshMessage } from './protocol.js';

// Cross-section display: one ball per mesh vertex, one bar per edge, one
// semitransparent polygon per face.

export interface MeshStyle {
  vertexColor: number;
  edgeColor: number;
  faceColor: number;
  faceOpacity: number; // in (0, 1]
  vertexRadius: number;
  edgeRadius: number;
}

export const DEFAULT_STYLE: MeshStyle = {
  vertexColor: 0x3b7fd4,
  edgeColor: 0xb9c0c8,
  faceColor: 0x7fb4e8,
  faceOpacity: 0.35,
  vertexRadius: 0.06,
  edgeRadius: 0.02,
};

const UP = new THREE.Vector3(0, 1, 0);

export class MeshView {
  readonly group = new THREE.Group();

  private vertexGroup = new THREE.Group();
  private edgeGroup = new THREE.Group();
  private faceGroup = new THREE.Group();

  private unitSphere = new THREE.SphereGeometry(1, 24, 16);
  private unitCylinder = new THREE.CylinderGeometry(1, 1, 1, 12, 1);
  private vertexMaterial: THREE.Material;
  private edgeMaterial: THREE.Material;
  private faceMaterial: THREE.Material;

  constructor(private style: MeshStyle = DEFAULT_STYLE) {
    if (!(style.faceOpacity > 0 && style.faceOpacity <= 1)) {
      throw new RangeError(`face opacity must be in (0, 1], got ${style.faceOpacity}`);
    }
    this.vertexMaterial = new THREE.MeshLambertMaterial({ color: style.vertexColor });
    this.edgeMaterial = new THREE.MeshLambertMaterial({ color: style.edgeColor });
    this.faceMaterial = new THREE.MeshBasicMaterial({
      color: style.faceColor,
      transparent: true,
      opacity: style.faceOpacity,
      side: THREE.DoubleSide,
      depthWrite: false,
    });
    this.group.add(this.vertexGroup, this.edgeGroup, this.faceGroup);
  }

  counts(): { vertices: number; edges: number; faces: number } {
    return {
      vertices: this.vertexGroup.children.length,
      edges: this.edgeGroup.children.length,
      faces: this.faceGroup.children.length,
    };
  }

  // Replaces the displayed cross-section; an empty mesh clears it.  Throws
  // TypeError on a malformed message and leaves the scene untouched.
  update(mesh: MeshMessage): void {
    if (!isMeshMessage(mesh)) {
      throw new TypeError('not a mesh message');
    }
    const n = mesh.vertices.length;
    for (const [i, j] of mesh.edges as [number, number][]) {
      if (!inRange(i, n) || !inRange(j, n)) {
        throw new TypeError(`edge index out of range for ${n} vertices`);
      }
    }
    for (const loop of mesh.faces) {
      if (!loop.every((i) => inRange(i, n))) {
        throw new TypeError(`face index out of range for ${n} vertices`);
      }
    }

    const points = mesh.vertices.map((v) => new THREE.Vector3(v[0], v[1], v[2]));
    this.clear();
    for (const p of points) {
      const ball = new THREE.Mesh(this.unitSphere, this.vertexMaterial);
      ball.position.copy(p);
      ball.scale.setScalar(this.style.vertexRadius);
      this.vertexGroup.add(ball);
    }
    for (const [i, j] of mesh.edges as [number, number][]) {
      this.edgeGroup.add(this.makeBar(points[i], points[j]));
    }
    for (const loop of mesh.faces) {
      this.faceGroup.add(this.makePolygon(points, loop));
    }
  }

  clear(): void {
    emptyGroup(this.vertexGroup, false);
    emptyGroup(this.edgeGroup, false);
    emptyGroup(this.faceGroup, true); // fan geometry is per face
  }

  private makeBar(a: THREE.Vector3, b: THREE.Vector3): THREE.Mesh {
    const dir = b.clone().sub(a);
    const length = dir.length();
    const bar = new THREE.Mesh(this.unitCylinder, this.edgeMaterial);
    bar.position.copy(a).addScaledVector(dir, 0.5);
    bar.scale.set(this.style.edgeRadius, length, this.style.edgeRadius);
    if (length > 0) {
      bar.quaternion.setFromUnitVectors(UP, dir.divideScalar(length));
    }
    return bar;
  }

  // Convex planar loop as a triangle fan around its first vertex.
  private makePolygon(points: THREE.Vector3[], loop: number[]): THREE.Mesh {
    const coords: number[] = [];
    for (let k = 1; k + 1 < loop.length; k += 1) {
      for (const idx of [loop[0], loop[k], loop[k + 1]]) {
        const p = points[idx];
        coords.push(p.x, p.y, p.z);
      }
    }
    const geometry = new THREE.BufferGeometry();
    geometry.setAttribute('position', new THREE.Float32BufferAttribute(coords, 3));
    return new THREE.Mesh(geometry, this.faceMaterial);
  }
}

function inRange(i: number, n: number): boolean {
  return Number.isInteger(i) && i >= 0 && i < n;
}

function emptyGroup(g: THREE.Group, disposeGeometry: boolean): void {
  for (const child of [...g.children]) {
    g.remove(child);
    if (disposeGeometry && child instanceof THREE.Mesh) {
      child.geometry.dispose();
    }
  }
}
