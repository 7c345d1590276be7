/* tslint:disable */
/* eslint-disable */

/**
 * Position counts of the masked covariance for one scheme and window.
 */
export class CoverageView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Row-major `M x M` counts.
     */
    readonly counts: Uint32Array;
    /**
     * Observed grid indices in `[1, M + L - 1]`.
     */
    readonly indices: Uint32Array;
    readonly m: number;
    /**
     * Snapshot count that guarantees full coverage, or 0 when none does.
     */
    readonly min_snapshots: number;
    readonly zero_entries: number;
}

/**
 * One simulated acquisition with its ESPRIT estimate and MUSIC pseudospectrum.
 */
export class EstimateView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly esprit: Float64Array;
    readonly grid: Float64Array;
    readonly music: Float64Array;
    /**
     * ESPRIT RMSE against the true frequencies under circular matching.
     */
    readonly rmse: number;
    readonly samples: number;
    /**
     * Pseudospectrum in dB relative to its maximum.
     */
    readonly spectrum_db: Float64Array;
    readonly truths: Float64Array;
}

export function coverage(ratios: Uint32Array, m: number, l: number): CoverageView;

export function estimate(ratios: Uint32Array, m: number, l: number, freqs: Float64Array, amps: Float64Array, snr_db: number, seed: number, grid_size: number): EstimateView;

export function rmse_vs_snr(ratios: Uint32Array, m: number, l: number, k: number, snr_values: Float64Array, trials: number, seed: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_coverageview_free: (a: number, b: number) => void;
    readonly __wbg_estimateview_free: (a: number, b: number) => void;
    readonly coverage: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly coverageview_counts: (a: number) => [number, number];
    readonly coverageview_indices: (a: number) => [number, number];
    readonly coverageview_m: (a: number) => number;
    readonly coverageview_min_snapshots: (a: number) => number;
    readonly coverageview_zero_entries: (a: number) => number;
    readonly estimate: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number, k: number) => [number, number, number];
    readonly estimateview_esprit: (a: number) => [number, number];
    readonly estimateview_grid: (a: number) => [number, number];
    readonly estimateview_music: (a: number) => [number, number];
    readonly estimateview_rmse: (a: number) => number;
    readonly estimateview_samples: (a: number) => number;
    readonly estimateview_spectrum_db: (a: number) => [number, number];
    readonly estimateview_truths: (a: number) => [number, number];
    readonly rmse_vs_snr: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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
