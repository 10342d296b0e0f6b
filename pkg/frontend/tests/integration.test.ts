// Round trip against a real gateway process with mock backends. Skipped
// only if the voxtour CLI is not on PATH (CI installs the Python package
// first).
import { type ChildProcess, spawn } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { GatewayClient } from "../src/api.js";
import { Poller } from "../src/poller.js";
import { buildScene } from "../src/scene.js";
import { ViewModel } from "../src/viewmodel.js";

const PORT = 18200 + (process.pid % 1000);
const BASE = `http://127.0.0.1:${PORT}`;

let gateway: ChildProcess;

async function waitFor(check: () => boolean, timeoutMs: number): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (!check()) {
    if (Date.now() > deadline) throw new Error("timed out waiting for condition");
    await new Promise((r) => setTimeout(r, 40));
  }
}

beforeAll(async () => {
  const dir = mkdtempSync(join(tmpdir(), "voxtour-ui-"));
  const cfg = join(dir, "config.json");
  writeFileSync(cfg, JSON.stringify({ backend: "mock", seed: 0, tick_hz: 20.0 }));
  gateway = spawn("voxtour", ["serve", "--config", cfg, "--port", String(PORT)], {
    stdio: "ignore",
  });
  const deadline = Date.now() + 20000;
  for (;;) {
    try {
      const res = await fetch(`${BASE}/models`);
      if (res.ok) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error("gateway did not come up");
    await new Promise((r) => setTimeout(r, 150));
  }
}, 30000);

afterAll(() => {
  gateway?.kill();
});

describe("operator UI against a live gateway", () => {
  it("query renders ack narration and a scene update within one poll interval", async () => {
    const client = new GatewayClient(BASE);
    const vm = new ViewModel();
    const created = await client.createSession("t4");
    vm.say("guide", created.narration);
    vm.applySnapshot(created.state);

    const poller = new Poller(client, created.session_id, vm, () => {});
    poller.start();
    try {
      const before = vm.sceneRevision;
      const canvasBefore = JSON.stringify(buildScene(vm.snapshot, 900, 620));

      const reply = await client.query(created.session_id, "Show me the capsid.");
      const replied = Date.now();
      vm.say("you", "Show me the capsid.");
      vm.say("guide", reply.narration);
      expect(reply.narration.length).toBeGreaterThan(0);
      expect(reply.intent).toBe("Pilot");

      await waitFor(() => vm.sceneRevision > before, 2000);
      expect(Date.now() - replied).toBeLessThanOrEqual(1000);

      // "capsid" resolves to the head node via its label; the canvas moved
      expect(vm.snapshot?.node.id).toBe("head");
      expect(JSON.stringify(buildScene(vm.snapshot, 900, 620))).not.toBe(canvasBefore);
      expect(vm.chat.at(-1)?.text).toBe(reply.narration);
    } finally {
      poller.stop();
    }
  }, 15000);

  it("chips always match the snapshot and never exceed two", async () => {
    const client = new GatewayClient(BASE);
    const vm = new ViewModel();
    const created = await client.createSession("t4");
    vm.applySnapshot(created.state);
    expect(vm.options).toEqual([]);

    const poller = new Poller(client, created.session_id, vm, () => {});
    poller.start();
    try {
      await client.query(created.session_id, "What is the head?");
      await waitFor(() => vm.options.length > 0, 2000);
      expect(vm.options.length).toBeLessThanOrEqual(2);
      expect(vm.options).toEqual(vm.snapshot!.options.slice(0, 2));
      expect(vm.options.map((o) => o.name)).toEqual(["head", "capsid protein"]);

      // selecting a chip consumes it; the next snapshot drives the row
      const picked = await client.select(created.session_id, 1);
      expect(picked.node.name).toBe("capsid protein");
      await waitFor(() => vm.options.length === 1, 2000);
      expect(vm.options.map((o) => o.name)).toEqual(["HOC"]);
      expect(vm.options).toEqual(vm.snapshot!.options.slice(0, 2));
    } finally {
      poller.stop();
    }
  }, 15000);

  it("explorer query moves the display camera through polled snapshots", async () => {
    const client = new GatewayClient(BASE);
    const vm = new ViewModel();
    const created = await client.createSession("t4");
    vm.applySnapshot(created.state);
    const startPos = created.state.display_camera.position.join(",");

    const poller = new Poller(client, created.session_id, vm, () => {});
    poller.start();
    try {
      await client.query(created.session_id, "Move the camera to show the right side.");
      await waitFor(
        () => vm.snapshot!.display_camera.position.join(",") !== startPos,
        2000,
      );
      expect(vm.snapshot!.animating).toBe(true);
    } finally {
      poller.stop();
    }
  }, 15000);
});
