/**
 * Package inspector: reach, PageRank, per-scenario shares, metadata
 * badges, owner kind, and one-click pin/exclude feeding the selection.
 */

import { ApiClient, ApiError } from './api';
import { el, pct } from './format';
import type { ViewState } from './state';
import { toggleExclude, togglePin } from './state';
import type { StateListener } from './selection-view';

export class InspectorView {
  private searchHost: HTMLElement;
  private panel: HTMLElement;

  constructor(
    root: HTMLElement,
    private api: ApiClient,
    private onStateChange: StateListener,
  ) {
    this.searchHost = el('div', { class: 'inspector-search' });
    this.panel = el('div', { class: 'inspector-panel' });
    root.append(this.searchHost, this.panel);
  }

  async render(state: ViewState): Promise<void> {
    this.renderSearch(state);
    if (!state.inspected) {
      this.panel.replaceChildren(el('p', { class: 'hint' }, 'search for a package'));
      return;
    }
    try {
      const detail = await this.api.packageDetail(state.inspected);
      this.renderDetail(state, detail);
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) {
        // inline message; the rest of the view state stays untouched
        this.panel.replaceChildren(
          el('p', { class: 'not-found' }, `package ${state.inspected} not found`),
        );
        return;
      }
      this.panel.replaceChildren(el('p', { class: 'error-message' }, 'service unreachable'));
    }
  }

  private renderSearch(state: ViewState): void {
    this.searchHost.replaceChildren();
    const input = el('input', {
      type: 'search',
      placeholder: 'package name',
      class: 'inspector-input',
      value: state.inspected ?? '',
    });
    const go = el('button', { type: 'button', class: 'inspect-go' }, 'Inspect');
    go.addEventListener('click', () => {
      const name = input.value.trim();
      if (name) {
        this.onStateChange({ ...state, inspected: name });
      }
    });
    input.addEventListener('keydown', (event) => {
      if ((event as KeyboardEvent).key === 'Enter') {
        go.click();
      }
    });
    this.searchHost.append(input, go);
  }

  private renderDetail(state: ViewState, detail: Awaited<ReturnType<ApiClient['packageDetail']>>): void {
    this.panel.replaceChildren();
    const record = detail.package;
    const title = el('h3', { class: 'inspector-title' }, record.name);
    this.panel.appendChild(title);

    const badges = el('div', { class: 'badges' });
    badges.appendChild(
      el('span', { class: 'badge reach-badge', 'data-reach': String(detail.reach) },
        `reach ${detail.reach}`),
    );
    badges.appendChild(
      el('span', { class: 'badge', 'data-pagerank': String(detail.pagerank) },
        `pagerank ${detail.pagerank.toExponential(3)}`),
    );
    if (record.maintained_score !== null) {
      badges.appendChild(el('span', { class: 'badge' }, `maintained ${record.maintained_score}`));
    } else {
      badges.appendChild(el('span', { class: 'badge warn' }, 'unscored'));
    }
    if (detail.owner_kind) {
      badges.appendChild(el('span', { class: 'badge' }, detail.owner_kind));
    }
    for (const [flag, text] of [
      [record.has_repository_link, 'repository'],
      [record.has_contact_info, 'contact'],
      [record.has_donation_link, 'donation'],
    ] as [boolean, string][]) {
      badges.appendChild(el('span', { class: flag ? 'badge ok' : 'badge missing' }, text));
    }
    this.panel.appendChild(badges);

    const shares = el('ul', { class: 'share-list' });
    for (const [scenario, share] of Object.entries(detail.shares)) {
      shares.appendChild(
        el(
          'li',
          { 'data-scenario': scenario, 'data-share': String(share) },
          share === null ? `${scenario}: n/a` : `${scenario}: ${pct(share)}`,
        ),
      );
    }
    this.panel.appendChild(shares);
    this.panel.appendChild(
      el('p', { class: 'degree' },
        `${detail.dependency_count} dependencies, ${detail.dependent_count} direct dependents`),
    );

    const actions = el('div', { class: 'inspector-actions' });
    const pin = el(
      'button',
      { type: 'button', class: 'pin-action', 'data-pin': record.name },
      state.pinned.includes(record.name) ? 'unpin' : 'pin',
    );
    pin.addEventListener('click', () => {
      this.onStateChange({ ...togglePin(state, record.name), tab: 'selection' });
    });
    const exclude = el(
      'button',
      { type: 'button', class: 'exclude-action', 'data-exclude': record.name },
      state.excluded.includes(record.name) ? 'include' : 'exclude',
    );
    exclude.addEventListener('click', () => {
      this.onStateChange({ ...toggleExclude(state, record.name), tab: 'selection' });
    });
    actions.append(pin, exclude);
    this.panel.appendChild(actions);
  }
}
