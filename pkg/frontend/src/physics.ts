/**
 * Force-directed simulation core.
 *
 * Mirrors the headless engine's per-tick contract exactly: same force
 * laws, same semi-implicit Euler update with multiplicative damping and
 * hard speed clamp, same EPS floor and coincidence handling. Repulsion is
 * evaluated by exact pairwise summation; at interactive graph sizes the
 * O(n^2) pass is cheap and keeps the tick bit-comparable to the reference
 * engine's exact mode.
 */

import { PhysicsConfig, solverSpring } from "./options";

export const EPS = 0.1; // px; repulsion distance floor and coincidence threshold

export interface SimState {
  positions: Float64Array; // [x0, y0, x1, y1, ...]
  velocities: Float64Array;
  pinned: Uint8Array;
  pinY: Uint8Array;
  iteration: number;
}

export interface SimInputs {
  edges: Array<[number, number]>;
  radii: Float64Array;
  degrees: Float64Array;
}

export function emptyState(count: number): SimState {
  return {
    positions: new Float64Array(count * 2),
    velocities: new Float64Array(count * 2),
    pinned: new Uint8Array(count),
    pinY: new Uint8Array(count),
    iteration: 0,
  };
}

/** Deterministic separation direction for near-coincident node pairs. */
function hashedDirection(i: number, j: number): [number, number] {
  const a = Math.min(i, j);
  const b = Math.max(i, j);
  const bucket = ((a * 73856093) ^ (b * 19349663)) & 1023;
  const angle = bucket * ((2.0 * Math.PI) / 1024.0);
  const sign = i > j ? 1.0 : -1.0;
  return [sign * Math.cos(angle), sign * Math.sin(angle)];
}

function unitDirection(
  dx: number,
  dy: number,
  d: number,
  i: number,
  j: number,
): [number, number] {
  if (d < EPS) {
    return hashedDirection(i, j);
  }
  return [dx / d, dy / d];
}

export function repulsiveForces(
  state: SimState,
  config: PhysicsConfig,
  inputs: SimInputs,
  out: Float64Array,
): void {
  const n = state.pinned.length;
  out.fill(0);
  if (n < 2) return;
  const p = state.positions;
  const solver = config.solver;

  if (solver === "barnesHut") {
    const gravity = Math.abs(config.params.gravity as number);
    const overlap = config.params.overlap as number;
    for (let i = 0; i < n; i++) {
      for (let j = 0; j < n; j++) {
        if (i === j) continue;
        const dx = p[2 * i] - p[2 * j];
        const dy = p[2 * i + 1] - p[2 * j + 1];
        const d = Math.sqrt(dx * dx + dy * dy);
        const [ux, uy] = unitDirection(dx, dy, d, i, j);
        const dprime = Math.max(EPS, d - overlap * (inputs.radii[i] + inputs.radii[j]));
        const mag = gravity / (dprime * dprime);
        out[2 * i] += mag * ux;
        out[2 * i + 1] += mag * uy;
      }
    }
    return;
  }

  if (solver === "repulsion" || solver === "hierarchicalRepulsion") {
    const k = config.params.springConstant as number;
    const distance = config.params.nodeDistance as number;
    for (let i = 0; i < n; i++) {
      for (let j = 0; j < n; j++) {
        if (i === j) continue;
        const dx = p[2 * i] - p[2 * j];
        const dy = p[2 * i + 1] - p[2 * j + 1];
        const d = Math.sqrt(dx * dx + dy * dy);
        if (d >= distance) continue;
        const [ux, uy] = unitDirection(dx, dy, d, i, j);
        const mag = (k * (distance - d)) / distance;
        out[2 * i] += mag * ux;
        out[2 * i + 1] += mag * uy;
      }
    }
    return;
  }

  // forceAtlas2Based
  const g = Math.abs(config.params.gravitationalConstant as number);
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      if (i === j) continue;
      const dx = p[2 * i] - p[2 * j];
      const dy = p[2 * i + 1] - p[2 * j + 1];
      const d = Math.sqrt(dx * dx + dy * dy);
      const [ux, uy] = unitDirection(dx, dy, d, i, j);
      const mag =
        (g * (inputs.degrees[i] + 1) * (inputs.degrees[j] + 1)) / Math.max(d, EPS);
      out[2 * i] += mag * ux;
      out[2 * i + 1] += mag * uy;
    }
  }
}

export function springForces(
  state: SimState,
  config: PhysicsConfig,
  inputs: SimInputs,
  out: Float64Array,
): void {
  out.fill(0);
  const { constant, length } = solverSpring(config);
  const p = state.positions;
  for (const [src, dst] of inputs.edges) {
    const dx = p[2 * dst] - p[2 * src];
    const dy = p[2 * dst + 1] - p[2 * src + 1];
    const d = Math.sqrt(dx * dx + dy * dy);
    if (d === 0) continue; // self-loops and exact overlaps contribute nothing
    const mag = constant * (d - length);
    const fx = (mag * dx) / d;
    const fy = (mag * dy) / d;
    out[2 * src] += fx;
    out[2 * src + 1] += fy;
    out[2 * dst] -= fx;
    out[2 * dst + 1] -= fy;
  }
}

export function centralGravityForces(
  state: SimState,
  config: PhysicsConfig,
  out: Float64Array,
): void {
  const cg = config.centralGravity;
  const p = state.positions;
  for (let i = 0; i < out.length; i++) {
    out[i] = -cg * p[i];
  }
}

/** One integration step; node mass is 1 everywhere. */
export function step(state: SimState, forces: Float64Array, config: PhysicsConfig): void {
  const n = state.pinned.length;
  const dt = config.timestep;
  const keep = 1.0 - config.damping;
  const maxV = config.maxVelocity;
  const v = state.velocities;
  const p = state.positions;
  for (let i = 0; i < n; i++) {
    let vx = (v[2 * i] + forces[2 * i] * dt) * keep;
    let vy = (v[2 * i + 1] + forces[2 * i + 1] * dt) * keep;
    const speed = Math.sqrt(vx * vx + vy * vy);
    if (speed > maxV) {
      const scale = maxV / speed;
      vx *= scale;
      vy *= scale;
    }
    if (state.pinned[i]) {
      vx = 0;
      vy = 0;
    }
    if (state.pinY[i]) {
      vy = 0;
    }
    v[2 * i] = vx;
    v[2 * i + 1] = vy;
    p[2 * i] += vx * dt;
    p[2 * i + 1] += vy * dt;
  }
  state.iteration += 1;
}

export interface TickScratch {
  repulsion: Float64Array;
  spring: Float64Array;
  gravity: Float64Array;
  total: Float64Array;
}

export function makeScratch(count: number): TickScratch {
  return {
    repulsion: new Float64Array(count * 2),
    spring: new Float64Array(count * 2),
    gravity: new Float64Array(count * 2),
    total: new Float64Array(count * 2),
  };
}

/** Full tick: repulsion + springs + central gravity, then one step. */
export function tick(
  state: SimState,
  config: PhysicsConfig,
  inputs: SimInputs,
  scratch: TickScratch,
): void {
  repulsiveForces(state, config, inputs, scratch.repulsion);
  springForces(state, config, inputs, scratch.spring);
  centralGravityForces(state, config, scratch.gravity);
  for (let i = 0; i < scratch.total.length; i++) {
    scratch.total[i] = scratch.repulsion[i] + scratch.spring[i] + scratch.gravity[i];
  }
  step(state, scratch.total, config);
}

export function maxSpeed(state: SimState): number {
  let best = 0;
  const v = state.velocities;
  for (let i = 0; i < state.pinned.length; i++) {
    const s = Math.sqrt(v[2 * i] * v[2 * i] + v[2 * i + 1] * v[2 * i + 1]);
    if (s > best) best = s;
  }
  return best;
}
