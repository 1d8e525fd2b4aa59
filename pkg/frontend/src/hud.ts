import { ErrorMessage, StateMessage } from './protocol.js';

// Text overlay showing the two rotation angles and the slice offset, plus
// an error banner for protocol errors.

export type AngleState = Pick<StateMessage, 'alpha' | 'beta' | 'c0' | 'theta0'>;

export function formatAngles(state: AngleState): string {
  const f = (x: number) => x.toFixed(4);
  return `α ${f(state.alpha)}   β ${f(state.beta)}   c₀ ${f(state.c0)}   θ₀ ${f(state.theta0)}`;
}

export function formatError(error: ErrorMessage): string {
  return `${error.code}: ${error.detail}`;
}

export interface Hud {
  setState(state: AngleState): void;
  showError(text: string): void;
  clearError(): void;
}

export function makeHud(root: HTMLElement): Hud {
  const angles = document.createElement('div');
  angles.className = 'hud-angles';
  const banner = document.createElement('div');
  banner.className = 'hud-banner';
  banner.style.display = 'none';
  root.appendChild(angles);
  root.appendChild(banner);

  return {
    setState(state: AngleState) {
      angles.textContent = formatAngles(state);
    },
    showError(text: string) {
      banner.textContent = text;
      banner.style.display = 'block';
    },
    clearError() {
      banner.style.display = 'none';
    },
  };
}
