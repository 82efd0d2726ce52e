/** Display-only view helpers: pan/zoom affine transform and hit-testing
 * against the stable element ids the service embeds in its SVG
 * (vertex-i, cut-j, cut-j-node-k, label-i).
 *
 * This is the full extent of client-side geometry — an affine display
 * transform.  Nothing here touches lattice coordinates.
 */

export interface ViewTransform {
  scale: number;
  tx: number;
  ty: number;
}

export const IDENTITY_VIEW: ViewTransform = { scale: 1, tx: 0, ty: 0 };

export function pan(vt: ViewTransform, dx: number, dy: number): ViewTransform {
  return { scale: vt.scale, tx: vt.tx + dx, ty: vt.ty + dy };
}

/** Zoom by `factor` keeping the screen point (cx, cy) fixed. */
export function zoomAt(
  vt: ViewTransform,
  cx: number,
  cy: number,
  factor: number,
): ViewTransform {
  if (!(factor > 0)) throw new Error("zoom factor must be positive");
  const scale = vt.scale * factor;
  return {
    scale,
    tx: cx - factor * (cx - vt.tx),
    ty: cy - factor * (cy - vt.ty),
  };
}

export function toCss(vt: ViewTransform): string {
  return `translate(${vt.tx}px, ${vt.ty}px) scale(${vt.scale})`;
}

export type Hit =
  | { kind: "vertex"; index: number }
  | { kind: "label"; index: number }
  | { kind: "cut"; index: number }
  | { kind: "node"; cut: number; node: number };

/** Decode one of the service's SVG element ids into a selection target. */
export function parseHit(id: string): Hit | null {
  let m = /^vertex-(\d+)$/.exec(id);
  if (m) return { kind: "vertex", index: Number(m[1]) };
  m = /^label-(\d+)$/.exec(id);
  if (m) return { kind: "label", index: Number(m[1]) };
  m = /^cut-(\d+)-node-(\d+)$/.exec(id);
  if (m) return { kind: "node", cut: Number(m[1]), node: Number(m[2]) };
  m = /^cut-(\d+)$/.exec(id);
  if (m) return { kind: "cut", index: Number(m[1]) };
  return null;
}

/** Walk up from an event target to the nearest element whose id decodes. */
export function hitFromTarget(target: Element | null): Hit | null {
  for (let el = target; el; el = el.parentElement) {
    if (el.id) {
      const hit = parseHit(el.id);
      if (hit) return hit;
    }
  }
  return null;
}
