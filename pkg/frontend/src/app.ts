/**
 * Application shell: tab routing, URL-synchronized state, snapshot-hash
 * header. All model numbers come from the /v1 API.
 */

import { ApiClient } from './api';
import { CompareView, SaveFile } from './compare-view';
import { el } from './format';
import { InspectorView } from './inspector';
import { SelectionView } from './selection-view';
import {
  DEFAULT_STATE,
  readStateFromUrl,
  writeStateToUrl,
  type ViewState,
} from './state';
import type { LabeledList } from './types';

export interface AppOptions {
  baseUrl?: string;
  initialSearch?: string;
  pushUrl?: (search: string) => void;
  saveFile?: SaveFile;
  builtinLists?: LabeledList[];
}

export class App {
  readonly api: ApiClient;
  state: ViewState;
  readonly selectionView: SelectionView;
  readonly compareView: CompareView;
  readonly inspectorView: InspectorView;
  private header: HTMLElement;
  private tabBar: HTMLElement;
  private panes: Record<ViewState['tab'], HTMLElement>;
  private pushUrl: (search: string) => void;

  constructor(root: HTMLElement, options: AppOptions = {}) {
    this.api = new ApiClient(options.baseUrl ?? '');
    this.state = readStateFromUrl(options.initialSearch ?? '');
    this.pushUrl =
      options.pushUrl ??
      ((search) => {
        const url = search || window.location.pathname;
        window.history.replaceState(null, '', url || '?');
      });

    this.header = el('header', { class: 'app-header' });
    this.header.appendChild(el('h1', {}, 'ecosystem support explorer'));
    this.tabBar = el('nav', { class: 'tab-bar' });
    root.append(this.header, this.tabBar);

    this.panes = {
      selection: el('section', { class: 'pane pane-selection' }),
      compare: el('section', { class: 'pane pane-compare', hidden: '' }),
      inspector: el('section', { class: 'pane pane-inspector', hidden: '' }),
    };
    for (const pane of Object.values(this.panes)) {
      root.appendChild(pane);
    }

    const update = (next: ViewState) => void this.setState(next);
    this.selectionView = new SelectionView(this.panes.selection, this.api, update);
    this.compareView = new CompareView(this.panes.compare, this.api, options.saveFile);
    this.inspectorView = new InspectorView(this.panes.inspector, this.api, update);
    if (options.builtinLists?.length) {
      void this.compareView.setLists(options.builtinLists);
    }
    this.renderTabs();
  }

  /** Fetch the summary and render the view for the initial state. */
  async start(): Promise<void> {
    try {
      const summary = await this.api.summary();
      this.header.appendChild(
        el(
          'div',
          { class: 'snapshot-info', 'data-snapshot-hash': summary.snapshot_hash },
          `snapshot ${summary.snapshot_hash.slice(0, 12)} - ${summary.packages} packages, ` +
            `${summary.edges} edges, ${summary.scored_packages} scored`,
        ),
      );
    } catch {
      this.header.appendChild(el('div', { class: 'snapshot-info error-message' }, 'summary unavailable'));
    }
    await this.setState(this.state, { push: false });
  }

  async setState(next: ViewState, options: { push?: boolean } = {}): Promise<void> {
    this.state = next;
    if (options.push !== false) {
      this.pushUrl(writeStateToUrl(next));
    }
    this.renderTabs();
    for (const [tab, pane] of Object.entries(this.panes)) {
      if (tab === next.tab) {
        pane.removeAttribute('hidden');
      } else {
        pane.setAttribute('hidden', '');
      }
    }
    if (next.tab === 'selection') {
      await this.selectionView.render(next);
    } else if (next.tab === 'compare') {
      await this.compareView.refresh();
    } else {
      await this.inspectorView.render(next);
    }
  }

  private renderTabs(): void {
    this.tabBar.replaceChildren();
    for (const tab of ['selection', 'compare', 'inspector'] as ViewState['tab'][]) {
      const button = el(
        'button',
        {
          type: 'button',
          class: tab === this.state.tab ? 'tab active' : 'tab',
          'data-tab': tab,
        },
        tab,
      );
      button.addEventListener('click', () => void this.setState({ ...this.state, tab }));
      this.tabBar.appendChild(button);
    }
  }
}

export { DEFAULT_STATE };
