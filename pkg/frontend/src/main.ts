import { GatewayClient, GatewayError } from "./api.js";
import { renderChips } from "./chips.js";
import { Poller } from "./poller.js";
import { buildScene, paint } from "./scene.js";
import type { StateDocument } from "./types.js";
import { ViewModel } from "./viewmodel.js";

// Single base-URL setting: ?gateway=http://host:port, else same origin.
const params = new URLSearchParams(location.search);
const baseUrl = params.get("gateway") ?? location.origin;
const modelKey = params.get("model") ?? "t4";

const el = (id: string) => document.getElementById(id) as HTMLElement;
const canvas = el("scene") as HTMLCanvasElement;
const chatLog = el("chat-log");
const chipRow = el("chips");
const input = el("query") as HTMLInputElement;
const sendButton = el("send") as HTMLButtonElement;
const banner = el("banner");
const inspector = el("inspector");

const client = new GatewayClient(baseUrl);
const vm = new ViewModel();
let sessionId = "";

function repaint(): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  paint(ctx, buildScene(vm.snapshot, canvas.width, canvas.height), canvas.width, canvas.height);
}

function renderChat(): void {
  chatLog.textContent = "";
  for (const line of vm.chat) {
    const div = document.createElement("div");
    div.className = `line ${line.who}`;
    div.textContent = `${line.who === "you" ? "you" : "guide"}: ${line.text}`;
    chatLog.appendChild(div);
  }
  chatLog.scrollTop = chatLog.scrollHeight;
}

function renderInspector(state: StateDocument | null): void {
  if (!state) {
    inspector.textContent = "";
    return;
  }
  const scene = state.scene
    ? `${state.scene.kind}${state.scene.target ? " of " + state.scene.target : ""}`
    : "idle";
  inspector.textContent = [
    `node: ${state.node.name} (scale ${state.scale_level})`,
    `scene: ${scene}  queued: ${state.queued_scenes}`,
    `speaking: ${state.speaking ? "yes" : "no"}  animating: ${state.animating ? "yes" : "no"}`,
    `plane: ${state.plane.enabled ? "on" : "off"}  history: ${state.history_depth}`,
  ].join("\n");
}

function renderAll(): void {
  banner.textContent = vm.status === "lost" ? "connection lost, retrying" : "";
  banner.style.display = vm.status === "lost" ? "block" : "none";
  input.disabled = vm.busy || !sessionId;
  sendButton.disabled = vm.busy || !sessionId;
  renderChips(chipRow, vm.options, (i) => void select(i), vm.busy);
  renderChat();
  renderInspector(vm.snapshot);
  repaint();
}

async function send(): Promise<void> {
  const text = input.value.trim();
  if (!text || vm.busy || !sessionId) return; // busy: rejected client-side
  vm.busy = true;
  vm.say("you", text);
  input.value = "";
  renderAll();
  try {
    const reply = await client.query(sessionId, text);
    vm.say("guide", reply.narration);
    vm.applySnapshot(reply.state);
  } catch (err) {
    if (err instanceof GatewayError && err.status === 409) {
      vm.say("guide", "still answering, one moment");
    } else {
      vm.say("guide", `error: ${err instanceof Error ? err.message : err}`);
    }
  } finally {
    vm.busy = false;
    renderAll();
  }
}

async function select(index: number): Promise<void> {
  if (vm.busy || !sessionId) return;
  const option = vm.options[index];
  if (!option) return;
  vm.busy = true;
  vm.say("you", `(selects ${option.name})`);
  renderAll();
  try {
    const reply = await client.select(sessionId, index);
    vm.say("guide", reply.narration);
    vm.applySnapshot(reply.state);
  } catch (err) {
    vm.say("guide", `error: ${err instanceof Error ? err.message : err}`);
  } finally {
    vm.busy = false;
    renderAll();
  }
}

sendButton.addEventListener("click", () => void send());
input.addEventListener("keydown", (ev) => {
  if (ev.key === "Enter") void send();
});

async function boot(): Promise<void> {
  try {
    const created = await client.createSession(modelKey);
    sessionId = created.session_id;
    document.title = `voxtour: ${created.model_name}`;
    vm.say("guide", created.narration);
    vm.applySnapshot(created.state);
    renderAll();
    new Poller(client, sessionId, vm, () => renderAll()).start();
  } catch (err) {
    banner.textContent = `cannot reach gateway at ${baseUrl}: ${err instanceof Error ? err.message : err}`;
    banner.style.display = "block";
  }
}

void boot();
