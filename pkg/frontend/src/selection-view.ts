/**
 * Selection explorer: tau slider, preset toggle, ranking table with the
 * selected prefix delimited, a cumulative-share bar, and pin/exclude
 * actions. Every numeric cell carries the verbatim server value in a
 * data attribute; at most one selection request is in flight and newer
 * requests abort stale ones.
 */

import { ApiClient, ApiError } from './api';
import { ErrorBanner } from './banner';
import { el, pct } from './format';
import type { ViewState } from './state';
import { toggleExclude, togglePin } from './state';
import type { Preset, SelectionResponse } from './types';

export type StateListener = (state: ViewState) => void;

export class SelectionView {
  private inflight: AbortController | null = null;
  private banner: ErrorBanner;
  private controls: HTMLElement;
  private status: HTMLElement;
  private chart: HTMLElement;
  private tableHost: HTMLElement;
  lastResponse: SelectionResponse | null = null;

  constructor(
    root: HTMLElement,
    private api: ApiClient,
    private onStateChange: StateListener,
  ) {
    this.banner = new ErrorBanner(root);
    this.controls = el('div', { class: 'selection-controls' });
    this.status = el('div', { class: 'selection-status' });
    this.chart = el('div', { class: 'cumulative-chart' });
    this.tableHost = el('div', { class: 'selection-table' });
    root.append(this.controls, this.status, this.chart, this.tableHost);
  }

  /** Issue one request for the state and render the response. */
  async render(state: ViewState): Promise<void> {
    this.renderControls(state);
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    try {
      const response = await this.api.selection(
        {
          preset: state.preset,
          tau: state.tau,
          pinned: state.pinned,
          excluded: state.excluded,
        },
        { signal: controller.signal },
      );
      if (controller !== this.inflight) {
        return; // superseded by a newer request
      }
      this.lastResponse = response;
      this.banner.hide();
      this.renderStatus(response);
      this.renderChart(response, state.tau);
      this.renderTable(response, state);
    } catch (error) {
      if (error instanceof DOMException && error.name === 'AbortError') {
        return;
      }
      const message =
        error instanceof ApiError ? error.message : 'service unreachable';
      this.banner.show(message, () => void this.render(state));
    } finally {
      if (this.inflight === controller) {
        this.inflight = null;
      }
    }
  }

  private renderControls(state: ViewState): void {
    this.controls.replaceChildren();

    const tauLabel = el('label', { class: 'tau-label' }, 'Impact threshold ');
    const tauValue = el('span', { class: 'tau-value' }, state.tau.toFixed(2));
    const slider = el('input', {
      type: 'range',
      min: '0.05',
      max: '1',
      step: '0.05',
      value: String(state.tau),
      class: 'tau-slider',
    });
    slider.addEventListener('change', () => {
      this.onStateChange({ ...state, tau: Number(slider.value) });
    });
    slider.addEventListener('input', () => {
      tauValue.textContent = Number(slider.value).toFixed(2);
    });
    tauLabel.append(slider, tauValue);

    const presets = el('div', { class: 'preset-toggle' });
    for (const preset of ['improvement', 'regression'] as Preset[]) {
      const button = el(
        'button',
        {
          type: 'button',
          class: preset === state.preset ? 'preset active' : 'preset',
          'data-preset': preset,
        },
        preset,
      );
      button.addEventListener('click', () => {
        if (preset !== state.preset) {
          this.onStateChange({ ...state, preset });
        }
      });
      presets.appendChild(button);
    }

    this.controls.append(tauLabel, presets);

    if (state.pinned.length || state.excluded.length) {
      const chips = el('div', { class: 'constraint-chips' });
      for (const name of state.pinned) {
        chips.appendChild(this.chip(state, name, 'pinned'));
      }
      for (const name of state.excluded) {
        chips.appendChild(this.chip(state, name, 'excluded'));
      }
      this.controls.appendChild(chips);
    }
  }

  private chip(state: ViewState, name: string, kind: 'pinned' | 'excluded'): HTMLElement {
    const chip = el('span', { class: `chip ${kind}`, 'data-package': name });
    chip.appendChild(el('span', {}, `${kind === 'pinned' ? 'pin' : 'excl'}: ${name}`));
    const clear = el('button', { type: 'button', class: 'chip-clear' }, 'x');
    clear.addEventListener('click', () => {
      const next = kind === 'pinned' ? togglePin(state, name) : toggleExclude(state, name);
      this.onStateChange(next);
    });
    chip.appendChild(clear);
    return chip;
  }

  private renderStatus(response: SelectionResponse): void {
    this.status.replaceChildren();
    this.status.appendChild(
      el(
        'span',
        {
          class: 'achieved',
          'data-achieved': String(response.achieved_share),
          'data-selected-count': String(response.selected.length),
        },
        `${response.scenario}: ${response.selected.length} packages reach ` +
          `${pct(response.achieved_share)} of total impact (tau ${response.tau})`,
      ),
    );
    const evaluation = response.evaluation;
    this.status.appendChild(
      el(
        'span',
        { class: 'evaluation-summary' },
        `maintainers: ${evaluation.distinct_maintainers} distinct / ` +
          `${evaluation.total_individuals} total; contact ${pct(evaluation.contact_fraction)}, ` +
          `donation ${pct(evaluation.donation_fraction)}`,
      ),
    );
  }

  private renderChart(response: SelectionResponse, tau: number): void {
    this.chart.replaceChildren();
    const width = 400;
    const height = 60;
    const svg = document.createElementNS('http://www.w3.org/2000/svg', 'svg');
    svg.setAttribute('viewBox', `0 0 ${width} ${height}`);
    svg.setAttribute('class', 'cumulative-svg');
    const rows = response.rows;
    if (rows.length) {
      const barWidth = width / rows.length;
      rows.forEach((row, i) => {
        const bar = document.createElementNS('http://www.w3.org/2000/svg', 'rect');
        const barHeight = Math.max(0, Math.min(1, row.cumulative)) * (height - 10);
        bar.setAttribute('x', String(i * barWidth));
        bar.setAttribute('y', String(height - barHeight));
        bar.setAttribute('width', String(Math.max(1, barWidth - 1)));
        bar.setAttribute('height', String(barHeight));
        bar.setAttribute('class', row.selected ? 'bar selected' : 'bar');
        bar.setAttribute('data-cumulative', String(row.cumulative));
        svg.appendChild(bar);
      });
      const line = document.createElementNS('http://www.w3.org/2000/svg', 'line');
      const y = height - tau * (height - 10);
      line.setAttribute('x1', '0');
      line.setAttribute('x2', String(width));
      line.setAttribute('y1', String(y));
      line.setAttribute('y2', String(y));
      line.setAttribute('class', 'tau-line');
      svg.appendChild(line);
    }
    this.chart.appendChild(svg);
  }

  private renderTable(response: SelectionResponse, state: ViewState): void {
    this.tableHost.replaceChildren();
    const table = el('table', { class: 'ranking' });
    const head = el('tr');
    for (const title of ['rank', 'package', 'share', 'cumulative', 'reach', '', '']) {
      head.appendChild(el('th', {}, title));
    }
    table.appendChild(head);

    let boundaryDrawn = false;
    for (const row of response.rows) {
      const tr = el('tr', {
        class: row.selected ? 'row selected' : 'row',
        'data-package': row.package,
        'data-share': String(row.share),
        'data-cumulative': String(row.cumulative),
        'data-selected': String(row.selected),
      });
      if (!row.selected && !boundaryDrawn) {
        tr.classList.add('first-unselected');
        boundaryDrawn = true;
      }
      tr.appendChild(el('td', {}, String(row.rank)));
      const nameCell = el('td', { class: 'package-name' });
      const link = el('a', { href: '#', 'data-inspect': row.package }, row.package);
      link.addEventListener('click', (event) => {
        event.preventDefault();
        this.onStateChange({ ...state, tab: 'inspector', inspected: row.package });
      });
      nameCell.appendChild(link);
      if (row.pinned) {
        nameCell.appendChild(el('span', { class: 'badge pin-badge' }, 'pinned'));
      }
      tr.appendChild(nameCell);
      tr.appendChild(el('td', { class: 'num' }, pct(row.share)));
      tr.appendChild(el('td', { class: 'num' }, pct(row.cumulative)));
      tr.appendChild(el('td', { class: 'num' }, String(row.reach)));

      const pinCell = el('td');
      const pinButton = el(
        'button',
        { type: 'button', class: 'pin-action', 'data-pin': row.package },
        row.pinned ? 'unpin' : 'pin',
      );
      pinButton.addEventListener('click', () => this.onStateChange(togglePin(state, row.package)));
      pinCell.appendChild(pinButton);
      tr.appendChild(pinCell);

      const excludeCell = el('td');
      const excludeButton = el(
        'button',
        { type: 'button', class: 'exclude-action', 'data-exclude': row.package },
        'exclude',
      );
      excludeButton.addEventListener('click', () =>
        this.onStateChange(toggleExclude(state, row.package)),
      );
      excludeCell.appendChild(excludeButton);
      tr.appendChild(excludeCell);

      table.appendChild(tr);
    }
    this.tableHost.appendChild(table);
  }
}
