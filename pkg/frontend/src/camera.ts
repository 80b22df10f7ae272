/** Pan/zoom camera: invertible world <-> screen transforms. */

export interface Camera {
  centerX: number; // world point at the viewport center
  centerY: number;
  zoom: number; // screen px per world unit, > 0
}

export interface Viewport {
  width: number;
  height: number;
}

export function makeCamera(): Camera {
  return { centerX: 0, centerY: 0, zoom: 1 };
}

export function worldToScreen(
  camera: Camera,
  viewport: Viewport,
  x: number,
  y: number,
): [number, number] {
  return [
    (x - camera.centerX) * camera.zoom + viewport.width / 2,
    (y - camera.centerY) * camera.zoom + viewport.height / 2,
  ];
}

export function screenToWorld(
  camera: Camera,
  viewport: Viewport,
  sx: number,
  sy: number,
): [number, number] {
  return [
    (sx - viewport.width / 2) / camera.zoom + camera.centerX,
    (sy - viewport.height / 2) / camera.zoom + camera.centerY,
  ];
}

export function panBy(camera: Camera, dxScreen: number, dyScreen: number): void {
  camera.centerX -= dxScreen / camera.zoom;
  camera.centerY -= dyScreen / camera.zoom;
}

const MIN_ZOOM = 0.05;
const MAX_ZOOM = 40;

/** Zoom by a factor keeping the world point under (sx, sy) fixed. */
export function zoomAt(
  camera: Camera,
  viewport: Viewport,
  sx: number,
  sy: number,
  factor: number,
): void {
  const [wx, wy] = screenToWorld(camera, viewport, sx, sy);
  camera.zoom = Math.min(MAX_ZOOM, Math.max(MIN_ZOOM, camera.zoom * factor));
  // keep (wx, wy) under the cursor after the zoom change
  camera.centerX = wx - (sx - viewport.width / 2) / camera.zoom;
  camera.centerY = wy - (sy - viewport.height / 2) / camera.zoom;
}

/** Fit the camera so all positions are visible with a margin. */
export function fitToContent(
  camera: Camera,
  viewport: Viewport,
  positions: Float64Array,
  margin: number,
): void {
  const count = positions.length / 2;
  if (count === 0 || viewport.width === 0 || viewport.height === 0) return;
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (let i = 0; i < count; i++) {
    minX = Math.min(minX, positions[2 * i]);
    maxX = Math.max(maxX, positions[2 * i]);
    minY = Math.min(minY, positions[2 * i + 1]);
    maxY = Math.max(maxY, positions[2 * i + 1]);
  }
  camera.centerX = (minX + maxX) / 2;
  camera.centerY = (minY + maxY) / 2;
  const spanX = maxX - minX + 2 * margin;
  const spanY = maxY - minY + 2 * margin;
  const zoom = Math.min(viewport.width / spanX, viewport.height / spanY);
  camera.zoom = Math.min(MAX_ZOOM, Math.max(MIN_ZOOM, zoom));
}
