// Physical keyboard layer: turns KeyboardEvent.key values into the key
// events the session protocol understands.

export interface KeyEvent {
  symbol: string;
  shifted: boolean;
}

// Rotation keys: a digit's hex value is the product of its two axis codes
// (x=1, y=2, z=3, w=4); y/z/w drive the double rotations; k/j step the
// first rotation angle and l/h step the slice offset.
const BOUND = new Set([...'23468cyzw', ...'kjlh']);

// What Shift turns a bound digit into on a US layout.
const SHIFTED_DIGITS: Record<string, string> = {
  '@': '2',
  '#': '3',
  $: '4',
  '^': '6',
  '*': '8',
};

// Maps a layout-dependent key value to a protocol key event, or null for
// unbound keys.  Uppercase letters and shifted digit characters normalize
// to the base symbol with shifted set, so the caller can forward
// KeyboardEvent.key from any layout that reports the produced character.
export function normalizeKey(key: string, shift: boolean): KeyEvent | null {
  if (BOUND.has(key)) {
    return { symbol: key, shifted: shift };
  }
  const lower = key.toLowerCase();
  if (key.length === 1 && key !== lower && BOUND.has(lower)) {
    return { symbol: lower, shifted: true };
  }
  const digit = SHIFTED_DIGITS[key];
  if (digit !== undefined) {
    return { symbol: digit, shifted: true };
  }
  return null;
}
