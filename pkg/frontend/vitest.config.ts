import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    // integration test spawns one gateway per file; keep files sequential
    // so ports and process cleanup stay simple
    fileParallelism: false,
  },
});
