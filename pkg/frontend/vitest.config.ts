import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "happy-dom",
    include: ["test/**/*.test.ts"],
    testTimeout: 120_000,
    hookTimeout: 120_000,
    // The e2e suite owns a live server subprocess; keep files sequential so
    // two suites never race on spawning/killing it.
    fileParallelism: false,
  },
});
