/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_coverageview_free: (a: number, b: number) => void;
export const __wbg_estimateview_free: (a: number, b: number) => void;
export const coverage: (a: number, b: number, c: number, d: number) => [number, number, number];
export const coverageview_counts: (a: number) => [number, number];
export const coverageview_indices: (a: number) => [number, number];
export const coverageview_m: (a: number) => number;
export const coverageview_min_snapshots: (a: number) => number;
export const coverageview_zero_entries: (a: number) => number;
export const estimate: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number, k: number) => [number, number, number];
export const estimateview_esprit: (a: number) => [number, number];
export const estimateview_grid: (a: number) => [number, number];
export const estimateview_music: (a: number) => [number, number];
export const estimateview_rmse: (a: number) => number;
export const estimateview_samples: (a: number) => number;
export const estimateview_spectrum_db: (a: number) => [number, number];
export const estimateview_truths: (a: number) => [number, number];
export const rmse_vs_snr: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
