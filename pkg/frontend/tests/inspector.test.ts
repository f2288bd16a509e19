/**
 * Package inspector: detail badges from server values, inline not-found
 * handling, and pin/exclude actions feeding the selection view.
 */

import { beforeEach, describe, expect, it } from 'vitest';

import { App } from '../src/app';
import type { SelectionResponse } from '../src/types';
import {
  installMockApi,
  mountRoot,
  selectionBody,
  waitFor,
  type MockApi,
} from './helpers';

describe('inspector view', () => {
  let mock: MockApi;
  let root: HTMLElement;

  beforeEach(() => {
    mock = installMockApi();
    root = mountRoot();
  });

  function makeApp(search: string): App {
    return new App(root, { initialSearch: search, pushUrl: () => undefined });
  }

  it('shows a leaf package with reach badge 1', async () => {
    const app = makeApp('?tab=inspector&pkg=charlie');
    await app.start();
    await waitFor(() => {
      expect(root.querySelector('.reach-badge')).not.toBeNull();
    });
    const badge = root.querySelector('.reach-badge') as HTMLElement;
    expect(badge.dataset.reach).toBe('1');
    expect(badge.textContent).toBe('reach 1');
    const shares = [...root.querySelectorAll('.share-list li')] as HTMLElement[];
    expect(shares.length).toBe(2);
  });

  it('unknown names get an inline message and state is kept', async () => {
    const app = makeApp('?tab=inspector&pkg=nope');
    await app.start();
    await waitFor(() => {
      expect(root.querySelector('.not-found')).not.toBeNull();
    });
    expect((root.querySelector('.not-found') as HTMLElement).textContent).toContain('nope');
    expect(app.state.tab).toBe('inspector');
    expect(app.state.inspected).toBe('nope');
  });

  it('pin from the inspector lands in the selection regardless of rank', async () => {
    const app = makeApp('?tab=inspector&pkg=echo');
    await app.start();
    await waitFor(() => {
      expect(root.querySelector('button[data-pin="echo"]')).not.toBeNull();
    });
    (root.querySelector('button[data-pin="echo"]') as HTMLButtonElement).click();

    const fixture = mock.fixtureJson<SelectionResponse>(
      'POST',
      '/v1/selection',
      'limit=200&offset=0',
      selectionBody('improvement', 0.8, ['echo']),
    );
    await waitFor(() => {
      expect(app.state.tab).toBe('selection');
      const selected = [...root.querySelectorAll('tr.row.selected')].map(
        (row) => (row as HTMLElement).dataset.package,
      );
      expect(selected).toEqual(fixture.selected);
    });
    expect(app.state.pinned).toEqual(['echo']);
    // echo has zero improvement share but is pinned into the prefix
    expect(fixture.selected).toContain('echo');
  });
});
