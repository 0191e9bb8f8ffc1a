/* tslint:disable */
/* eslint-disable */

/**
 * Evaluates one design in the default scene: the solution plus its drawing.
 */
export function evaluate(a: number, b: number, c: number, theta1_deg: number): string;

/**
 * Runs the optimizer with the default scene and returns the Pareto table.
 */
export function optimize(seed: bigint, iterations: number): string;

/**
 * Kernel density of the mirror-C reference point over every evaluation of
 * the same run `optimize(seed, iterations)` performs.
 */
export function point_c_density(seed: bigint, iterations: number, grid_size: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly evaluate: (a: number, b: number, c: number, d: number) => [number, number];
    readonly optimize: (a: bigint, b: number) => [number, number];
    readonly point_c_density: (a: bigint, b: number, c: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
