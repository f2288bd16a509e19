/**
 * View state and its URL serialization.
 * Reloading a serialized URL reproduces the identical rendered selection;
 * only non-default values are written to keep URLs clean.
 */

import type { Preset } from './types';

export interface ViewState {
  tab: 'selection' | 'compare' | 'inspector';
  tau: number;
  preset: Preset;
  pinned: string[];
  excluded: string[];
  inspected: string | null;
}

export const DEFAULT_STATE: ViewState = {
  tab: 'selection',
  tau: 0.8,
  preset: 'improvement',
  pinned: [],
  excluded: [],
  inspected: null,
};

function parseNames(value: string | null): string[] {
  if (!value) {
    return [];
  }
  return value
    .split(',')
    .map((name) => name.trim())
    .filter((name) => name.length > 0)
    .sort();
}

export function readStateFromUrl(search: string): ViewState {
  const params = new URLSearchParams(search);
  const tabParam = params.get('tab');
  const tab =
    tabParam === 'compare' || tabParam === 'inspector' ? tabParam : DEFAULT_STATE.tab;
  const tauParam = Number(params.get('tau'));
  const tau = Number.isFinite(tauParam) && tauParam > 0 && tauParam <= 1 ? tauParam : DEFAULT_STATE.tau;
  const preset: Preset = params.get('preset') === 'regression' ? 'regression' : 'improvement';
  const pinned = parseNames(params.get('pin'));
  const excludedRaw = parseNames(params.get('exc'));
  // the pin wins on overlap; the sets must stay disjoint
  const excluded = excludedRaw.filter((name) => !pinned.includes(name));
  return {
    tab,
    tau,
    preset,
    pinned,
    excluded,
    inspected: params.get('pkg'),
  };
}

export function writeStateToUrl(state: ViewState): string {
  const params = new URLSearchParams();
  if (state.tab !== DEFAULT_STATE.tab) {
    params.set('tab', state.tab);
  }
  if (state.tau !== DEFAULT_STATE.tau) {
    params.set('tau', String(state.tau));
  }
  if (state.preset !== DEFAULT_STATE.preset) {
    params.set('preset', state.preset);
  }
  if (state.pinned.length) {
    params.set('pin', [...state.pinned].sort().join(','));
  }
  if (state.excluded.length) {
    params.set('exc', [...state.excluded].sort().join(','));
  }
  if (state.inspected) {
    params.set('pkg', state.inspected);
  }
  const text = params.toString();
  return text ? `?${text}` : '';
}

/** Pin a package; removes it from the excluded set to keep them disjoint. */
export function togglePin(state: ViewState, name: string): ViewState {
  const pinned = state.pinned.includes(name)
    ? state.pinned.filter((n) => n !== name)
    : [...state.pinned, name].sort();
  return {
    ...state,
    pinned,
    excluded: state.excluded.filter((n) => n !== name),
  };
}

/** Exclude a package; removes it from the pinned set to keep them disjoint. */
export function toggleExclude(state: ViewState, name: string): ViewState {
  const excluded = state.excluded.includes(name)
    ? state.excluded.filter((n) => n !== name)
    : [...state.excluded, name].sort();
  return {
    ...state,
    excluded,
    pinned: state.pinned.filter((n) => n !== name),
  };
}
