import { defineConfig } from 'vitest/config';

export default defineConfig({
  server: {
    proxy: {
      // dev convenience: forward API calls to a locally running service
      '/v1': 'http://127.0.0.1:8350',
    },
  },
  test: {
    environment: 'happy-dom',
    include: ['tests/**/*.test.ts'],
  },
});
