/**
 * Non-blocking error banner with a retry hook.
 */

import { el } from './format';

export class ErrorBanner {
  private node: HTMLElement;

  constructor(host: HTMLElement) {
    this.node = el('div', { class: 'error-banner', hidden: '' });
    host.appendChild(this.node);
  }

  show(message: string, retry?: () => void): void {
    this.node.replaceChildren();
    this.node.removeAttribute('hidden');
    this.node.appendChild(el('span', { class: 'error-message' }, message));
    if (retry) {
      const button = el('button', { class: 'retry', type: 'button' }, 'Retry');
      button.addEventListener('click', () => {
        this.hide();
        retry();
      });
      this.node.appendChild(button);
    }
  }

  hide(): void {
    this.node.setAttribute('hidden', '');
    this.node.replaceChildren();
  }
}
