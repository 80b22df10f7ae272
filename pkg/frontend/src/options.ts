/**
 * Physics options: defaults, clamping ranges, canonical serialization.
 *
 * The canonical text produced here must parse unchanged by the Python
 * `options-validate` command, so the key order and number formatting
 * mirror that serializer exactly.
 */

export type SolverKind =
  | "barnesHut"
  | "forceAtlas2Based"
  | "repulsion"
  | "hierarchicalRepulsion";

export const SOLVERS: SolverKind[] = [
  "barnesHut",
  "forceAtlas2Based",
  "repulsion",
  "hierarchicalRepulsion",
];

export type ParamBlock = Record<string, number>;

export interface Stabilization {
  enabled: boolean;
  iterations: number;
}

export interface ViewerOptions {
  enabled: boolean;
  solver: SolverKind;
  blocks: Record<SolverKind, ParamBlock>; // current values per solver
  maxVelocity: number;
  minVelocity: number;
  timestep: number;
  stabilization: Stabilization;
  extras: Array<[string, unknown]>; // unknown top-level sections, first-seen order
}

/** Resolved numbers the simulation loop reads every tick. */
export interface PhysicsConfig {
  solver: SolverKind;
  params: ParamBlock;
  centralGravity: number;
  damping: number;
  maxVelocity: number;
  minVelocity: number;
  timestep: number;
  enabled: boolean;
}

interface FieldSpec {
  key: string;
  label: string;
  min: number;
  max: number;
  step: number;
}

export const BLOCK_FIELDS: Record<SolverKind, FieldSpec[]> = {
  barnesHut: [
    { key: "gravity", label: "gravity", min: -200000, max: 0, step: 500 },
    { key: "centralGravity", label: "central gravity", min: 0, max: 3, step: 0.01 },
    { key: "springLength", label: "spring length", min: 0, max: 500, step: 5 },
    { key: "springStrength", label: "spring strength", min: 0, max: 0.5, step: 0.001 },
    { key: "damping", label: "damping", min: 0, max: 0.99, step: 0.01 },
    { key: "overlap", label: "overlap", min: 0, max: 1, step: 0.01 },
  ],
  forceAtlas2Based: [
    { key: "gravitationalConstant", label: "gravitational constant", min: -500, max: 0, step: 1 },
    { key: "centralGravity", label: "central gravity", min: 0, max: 1, step: 0.005 },
    { key: "springLength", label: "spring length", min: 0, max: 500, step: 5 },
    { key: "springConstant", label: "spring constant", min: 0, max: 0.5, step: 0.001 },
    { key: "damping", label: "damping", min: 0, max: 0.99, step: 0.01 },
  ],
  repulsion: [
    { key: "centralGravity", label: "central gravity", min: 0, max: 3, step: 0.01 },
    { key: "springConstant", label: "spring constant", min: 0, max: 0.5, step: 0.001 },
    { key: "nodeDistance", label: "node distance", min: 1, max: 500, step: 1 },
    { key: "damping", label: "damping", min: 0, max: 0.99, step: 0.01 },
    { key: "springLength", label: "spring length", min: 0, max: 500, step: 5 },
  ],
  hierarchicalRepulsion: [
    { key: "centralGravity", label: "central gravity", min: 0, max: 3, step: 0.01 },
    { key: "springConstant", label: "spring constant", min: 0, max: 0.5, step: 0.001 },
    { key: "nodeDistance", label: "node distance", min: 1, max: 500, step: 1 },
    { key: "damping", label: "damping", min: 0, max: 0.99, step: 0.01 },
    { key: "springLength", label: "spring length", min: 0, max: 500, step: 5 },
  ],
};

export const GLOBAL_FIELDS: FieldSpec[] = [
  { key: "maxVelocity", label: "max velocity", min: 1, max: 150, step: 1 },
  { key: "minVelocity", label: "min velocity", min: 0.01, max: 5, step: 0.01 },
  { key: "timestep", label: "timestep", min: 0.05, max: 1.5, step: 0.01 },
];

export function defaultBlock(solver: SolverKind): ParamBlock {
  switch (solver) {
    case "barnesHut":
      return {
        gravity: -80000,
        centralGravity: 0.3,
        springLength: 250,
        springStrength: 0.001,
        damping: 0.09,
        overlap: 0,
      };
    case "forceAtlas2Based":
      return {
        gravitationalConstant: -50,
        centralGravity: 0.01,
        springLength: 100,
        springConstant: 0.08,
        damping: 0.4,
      };
    case "repulsion":
      return {
        centralGravity: 0.2,
        springConstant: 0.05,
        nodeDistance: 100,
        damping: 0.09,
        springLength: 200,
      };
    case "hierarchicalRepulsion":
      return {
        centralGravity: 0,
        springConstant: 0.01,
        nodeDistance: 120,
        damping: 0.09,
        springLength: 100,
      };
  }
}

export function defaultOptions(): ViewerOptions {
  return {
    enabled: true,
    solver: "barnesHut",
    blocks: {
      barnesHut: defaultBlock("barnesHut"),
      forceAtlas2Based: defaultBlock("forceAtlas2Based"),
      repulsion: defaultBlock("repulsion"),
      hierarchicalRepulsion: defaultBlock("hierarchicalRepulsion"),
    },
    maxVelocity: 50,
    minVelocity: 0.1,
    timestep: 0.5,
    stabilization: { enabled: true, iterations: 1000 },
    extras: [],
  };
}

/** Read the document payload's options object into viewer state. */
export function loadOptions(raw: unknown): ViewerOptions {
  const options = defaultOptions();
  if (raw === null || typeof raw !== "object" || Array.isArray(raw)) {
    throw new Error("options payload must be an object");
  }
  for (const [key, value] of Object.entries(raw as Record<string, unknown>)) {
    if (key !== "physics") {
      options.extras.push([key, value]);
      continue;
    }
    if (value === null || typeof value !== "object" || Array.isArray(value)) {
      throw new Error("physics section must be an object");
    }
    const physics = value as Record<string, unknown>;
    let explicitSolver: SolverKind | null = null;
    const seenBlocks: SolverKind[] = [];
    for (const [name, entry] of Object.entries(physics)) {
      if (name === "enabled") {
        options.enabled = Boolean(entry);
      } else if (name === "solver") {
        if (!SOLVERS.includes(entry as SolverKind)) {
          throw new Error(`unknown solver ${JSON.stringify(entry)}`);
        }
        explicitSolver = entry as SolverKind;
      } else if (SOLVERS.includes(name as SolverKind)) {
        const solver = name as SolverKind;
        seenBlocks.push(solver);
        const block = options.blocks[solver];
        for (const [paramKey, paramValue] of Object.entries(entry as Record<string, unknown>)) {
          if (!(paramKey in block) || typeof paramValue !== "number") {
            throw new Error(`bad ${solver} parameter ${paramKey}`);
          }
          block[paramKey] = paramValue;
        }
      } else if (name === "maxVelocity" || name === "minVelocity" || name === "timestep") {
        if (typeof entry !== "number") throw new Error(`${name} must be a number`);
        options[name] = entry;
      } else if (name === "stabilization") {
        const stab = entry as Record<string, unknown>;
        options.stabilization = {
          enabled: Boolean(stab.enabled ?? true),
          iterations: typeof stab.iterations === "number" ? stab.iterations : 1000,
        };
      } else {
        throw new Error(`unknown physics key ${name}`);
      }
    }
    if (explicitSolver !== null) {
      options.solver = explicitSolver;
    } else if (seenBlocks.length === 1) {
      options.solver = seenBlocks[0];
    }
  }
  return options;
}

export function physicsConfig(options: ViewerOptions): PhysicsConfig {
  const params = options.blocks[options.solver];
  return {
    solver: options.solver,
    params,
    centralGravity: params.centralGravity ?? 0,
    damping: params.damping,
    maxVelocity: options.maxVelocity,
    minVelocity: options.minVelocity,
    timestep: options.timestep,
    enabled: options.enabled,
  };
}

export function solverSpring(config: PhysicsConfig): { constant: number; length: number } {
  if (config.solver === "barnesHut") {
    return { constant: config.params.springStrength, length: config.params.springLength };
  }
  return { constant: config.params.springConstant, length: config.params.springLength };
}

const clampValue = (value: number, min: number, max: number) =>
  Math.min(max, Math.max(min, value));

/**
 * Apply a configurator change at a parameter path
 * ("physics.<solver>.<param>", "physics.maxVelocity", "physics.solver",
 * "physics.enabled"). Numeric values are clamped into the field's range.
 * Returns false for unknown paths.
 */
export function applyWidgetChange(
  options: ViewerOptions,
  path: string,
  value: number | string | boolean,
): boolean {
  const parts = path.split(".");
  if (parts[0] !== "physics") return false;
  if (parts.length === 2) {
    const key = parts[1];
    if (key === "solver") {
      if (!SOLVERS.includes(value as SolverKind)) return false;
      options.solver = value as SolverKind;
      options.blocks[options.solver] = defaultBlock(options.solver);
      return true;
    }
    if (key === "enabled") {
      options.enabled = Boolean(value);
      return true;
    }
    const spec = GLOBAL_FIELDS.find((f) => f.key === key);
    if (!spec || typeof value !== "number" || !Number.isFinite(value)) return false;
    let next = clampValue(value, spec.min, spec.max);
    if (key === "maxVelocity") next = Math.max(next, options.minVelocity + 0.01);
    if (key === "minVelocity") next = Math.min(next, options.maxVelocity - 0.01);
    (options as unknown as Record<string, number>)[key] = next;
    return true;
  }
  if (parts.length === 3 && SOLVERS.includes(parts[1] as SolverKind)) {
    const solver = parts[1] as SolverKind;
    const spec = BLOCK_FIELDS[solver].find((f) => f.key === parts[2]);
    if (!spec || typeof value !== "number" || !Number.isFinite(value)) return false;
    options.blocks[solver][parts[2]] = clampValue(value, spec.min, spec.max);
    return true;
  }
  return false;
}

/** Canonical JSON body, key-ordered to match the reference serializer. */
export function canonicalOptionsJson(options: ViewerOptions): string {
  const block: Record<string, number> = {};
  for (const spec of BLOCK_FIELDS[options.solver]) {
    block[spec.key] = options.blocks[options.solver][spec.key];
  }
  const physics: Record<string, unknown> = {
    enabled: options.enabled,
    [options.solver]: block,
    maxVelocity: options.maxVelocity,
    minVelocity: options.minVelocity,
    solver: options.solver,
    timestep: options.timestep,
    stabilization: {
      enabled: options.stabilization.enabled,
      iterations: options.stabilization.iterations,
    },
  };
  const root: Record<string, unknown> = { physics };
  for (const [key, value] of options.extras) {
    root[key] = value;
  }
  return JSON.stringify(root);
}

/** The copy/paste-able script shown in the configurator's text area. */
export function optionsScriptText(options: ViewerOptions): string {
  return `var options = ${canonicalOptionsJson(options)};`;
}
