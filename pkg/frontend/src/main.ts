import { App } from './app';
import { readStateFromUrl } from './state';
import './style.css';

const root = document.getElementById('app');
if (root) {
  const app = new App(root, {
    baseUrl: import.meta.env.VITE_API_BASE ?? '',
    initialSearch: window.location.search,
  });
  void app.start();
  window.addEventListener('popstate', () => {
    void app.setState(readStateFromUrl(window.location.search), { push: false });
  });
}
