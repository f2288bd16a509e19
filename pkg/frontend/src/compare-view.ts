/**
 * Side-by-side strategy comparison. Renders one row per mechanism list
 * plus the server's impact-driven row, sortable by any column; the
 * export button downloads the server's CSV bytes unmodified.
 */

import { ApiClient, ApiError } from './api';
import { ErrorBanner } from './banner';
import { el, pct } from './format';
import type { CompareResponse, LabeledList, StrategyRow } from './types';

const COLUMNS: { key: keyof StrategyRow; title: string; percent?: boolean }[] = [
  { key: 'label', title: 'strategy' },
  { key: 'package_count', title: 'packages' },
  { key: 'ecosystem_fraction', title: '% ecosystem', percent: true },
  { key: 'improvement_share', title: 'improvement', percent: true },
  { key: 'regression_share', title: 'regression', percent: true },
  { key: 'total_individuals', title: 'individuals' },
  { key: 'distinct_maintainers', title: 'maintainers' },
  { key: 'single_maintainer_count', title: 'single-maint.' },
  { key: 'contact_fraction', title: 'contact', percent: true },
  { key: 'donation_fraction', title: 'donation', percent: true },
  { key: 'excluded_count', title: 'excluded' },
  { key: 'unresolved_count', title: 'unresolved' },
];

export type SaveFile = (filename: string, text: string, contentType: string) => void;

function browserSaveFile(filename: string, text: string, contentType: string): void {
  const blob = new Blob([text], { type: contentType });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement('a');
  anchor.href = url;
  anchor.download = filename;
  anchor.click();
  URL.revokeObjectURL(url);
}

export class CompareView {
  private banner: ErrorBanner;
  private listsHost: HTMLElement;
  private tableHost: HTMLElement;
  private lists: LabeledList[] = [];
  private response: CompareResponse | null = null;
  private sortKey: keyof StrategyRow | null = null;
  private sortDescending = true;

  constructor(
    root: HTMLElement,
    private api: ApiClient,
    private saveFile: SaveFile = browserSaveFile,
  ) {
    this.banner = new ErrorBanner(root);
    this.listsHost = el('div', { class: 'mechanism-lists' });
    this.tableHost = el('div', { class: 'strategy-table' });
    root.append(this.listsHost, this.tableHost);
    this.renderListEditor();
  }

  /** Replace the loaded mechanism lists and re-query the server. */
  async setLists(lists: LabeledList[]): Promise<void> {
    this.lists = lists;
    this.renderListEditor();
    await this.refresh();
  }

  async refresh(): Promise<void> {
    try {
      this.response = await this.api.compare(this.lists);
      this.banner.hide();
      this.renderTable();
    } catch (error) {
      const message = error instanceof ApiError ? error.message : 'service unreachable';
      this.banner.show(message, () => void this.refresh());
    }
  }

  private renderListEditor(): void {
    this.listsHost.replaceChildren();
    const summary = el(
      'div',
      { class: 'list-summary' },
      this.lists.length
        ? `${this.lists.length} mechanism list(s) loaded`
        : 'no mechanism lists loaded',
    );
    for (const list of this.lists) {
      summary.appendChild(
        el('span', { class: 'chip list-chip', 'data-list': list.label },
          `${list.label} (${list.packages.length})`),
      );
    }
    this.listsHost.appendChild(summary);

    const form = el('div', { class: 'list-form' });
    const labelInput = el('input', {
      type: 'text',
      placeholder: 'label',
      class: 'list-label',
    });
    const namesInput = el('textarea', {
      placeholder: 'one package name per line',
      class: 'list-names',
      rows: '3',
    });
    const add = el('button', { type: 'button', class: 'add-list' }, 'Add list');
    add.addEventListener('click', () => {
      const label = labelInput.value.trim();
      const packages = namesInput.value
        .split('\n')
        .map((line) => line.trim())
        .filter((line) => line.length > 0);
      if (label && packages.length) {
        void this.setLists([...this.lists, { label, packages }]);
      }
    });
    const exportButton = el('button', { type: 'button', class: 'export-csv' }, 'Export CSV');
    exportButton.addEventListener('click', () => void this.exportCsv());
    form.append(labelInput, namesInput, add, exportButton);
    this.listsHost.appendChild(form);
  }

  async exportCsv(): Promise<void> {
    try {
      const text = await this.api.compareCsv(this.lists);
      this.saveFile('strategies.csv', text, 'text/csv');
    } catch (error) {
      const message = error instanceof ApiError ? error.message : 'service unreachable';
      this.banner.show(message, () => void this.exportCsv());
    }
  }

  sortBy(key: keyof StrategyRow): void {
    if (this.sortKey === key) {
      this.sortDescending = !this.sortDescending;
    } else {
      this.sortKey = key;
      this.sortDescending = true;
    }
    this.renderTable();
  }

  private sortedRows(): StrategyRow[] {
    if (!this.response) {
      return [];
    }
    const rows = [...this.response.rows];
    const key = this.sortKey;
    if (key === null) {
      return rows;
    }
    rows.sort((a, b) => {
      const va = a[key];
      const vb = b[key];
      const order =
        typeof va === 'number' && typeof vb === 'number'
          ? va - vb
          : String(va).localeCompare(String(vb));
      return this.sortDescending ? -order : order;
    });
    return rows;
  }

  private renderTable(): void {
    this.tableHost.replaceChildren();
    if (!this.response) {
      return;
    }
    const table = el('table', { class: 'strategies' });
    const head = el('tr');
    for (const column of COLUMNS) {
      const th = el('th', { 'data-sort': column.key }, column.title);
      th.addEventListener('click', () => this.sortBy(column.key));
      head.appendChild(th);
    }
    table.appendChild(head);

    for (const row of this.sortedRows()) {
      const tr = el('tr', { class: 'strategy-row', 'data-label': row.label });
      if (row.unresolved_count > 0) {
        tr.classList.add('has-unresolved');
        tr.setAttribute('title', `${row.unresolved_count} unresolved entries`);
      }
      for (const column of COLUMNS) {
        const value = row[column.key];
        const td = el('td', {
          class: typeof value === 'number' ? 'num' : 'text',
          'data-field': column.key,
          'data-value': String(value),
        });
        td.textContent =
          typeof value === 'number' && column.percent ? pct(value) : String(value);
        tr.appendChild(td);
      }
      table.appendChild(tr);
    }
    this.tableHost.appendChild(table);
  }
}
