import { defineConfig } from "vitest/config";

// End-to-end suite: boots the real service once (e2e/setup.ts) and drives
// the UI and the API client against it. Files run serially so the latency
// measurement is not polluted by a concurrent sweep.
export default defineConfig({
  test: {
    include: ["e2e/**/*.e2e.test.ts"],
    globalSetup: ["e2e/setup.ts"],
    environment: "node",
    testTimeout: 180_000,
    hookTimeout: 120_000,
    fileParallelism: false,
  },
});
