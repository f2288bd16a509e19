import { describe, expect, it } from 'vitest';

import {
  DEFAULT_STATE,
  readStateFromUrl,
  toggleExclude,
  togglePin,
  writeStateToUrl,
  type ViewState,
} from '../src/state';

describe('view state URL round trip', () => {
  it('defaults produce an empty query string', () => {
    expect(writeStateToUrl(DEFAULT_STATE)).toBe('');
    expect(readStateFromUrl('')).toEqual(DEFAULT_STATE);
  });

  it('round-trips every field', () => {
    const state: ViewState = {
      tab: 'compare',
      tau: 0.55,
      preset: 'regression',
      pinned: ['alpha', 'bravo'],
      excluded: ['charlie'],
      inspected: 'echo',
    };
    const search = writeStateToUrl(state);
    expect(readStateFromUrl(search)).toEqual(state);
  });

  it('writes only non-default values', () => {
    const search = writeStateToUrl({ ...DEFAULT_STATE, tau: 0.9 });
    expect(search).toBe('?tau=0.9');
  });

  it('drops invalid tau and tab values', () => {
    expect(readStateFromUrl('?tau=7').tau).toBe(DEFAULT_STATE.tau);
    expect(readStateFromUrl('?tau=-1').tau).toBe(DEFAULT_STATE.tau);
    expect(readStateFromUrl('?tab=bogus').tab).toBe('selection');
  });

  it('enforces pin/exclude disjointness on read', () => {
    const state = readStateFromUrl('?pin=alpha,bravo&exc=bravo,charlie');
    expect(state.pinned).toEqual(['alpha', 'bravo']);
    expect(state.excluded).toEqual(['charlie']);
  });
});

describe('pin and exclude toggles', () => {
  it('pinning removes the package from the excluded set', () => {
    const state = { ...DEFAULT_STATE, excluded: ['alpha'] };
    const next = togglePin(state, 'alpha');
    expect(next.pinned).toEqual(['alpha']);
    expect(next.excluded).toEqual([]);
  });

  it('excluding removes the package from the pinned set', () => {
    const state = { ...DEFAULT_STATE, pinned: ['alpha'] };
    const next = toggleExclude(state, 'alpha');
    expect(next.excluded).toEqual(['alpha']);
    expect(next.pinned).toEqual([]);
  });

  it('toggling twice restores the original membership', () => {
    const once = togglePin(DEFAULT_STATE, 'alpha');
    const twice = togglePin(once, 'alpha');
    expect(twice.pinned).toEqual([]);
  });
});
