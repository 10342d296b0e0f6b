// @vitest-environment jsdom
import { describe, expect, it, vi } from "vitest";

import { renderChips } from "../src/chips.js";

const opt = (name: string) => ({ id: name.toLowerCase(), name, label: name });

describe("renderChips", () => {
  it("renders one button per option, never more than two", () => {
    const row = document.createElement("div");
    renderChips(row, [opt("T4"), opt("head")], () => {}, false);
    const buttons = row.querySelectorAll("button");
    expect(buttons.length).toBe(2);
    expect([...buttons].map((b) => b.textContent)).toEqual(["T4", "head"]);

    renderChips(row, [opt("a"), opt("b"), opt("c")], () => {}, false);
    expect(row.querySelectorAll("button").length).toBe(2);
  });

  it("clears stale chips on re-render", () => {
    const row = document.createElement("div");
    renderChips(row, [opt("T4"), opt("head")], () => {}, false);
    renderChips(row, [], () => {}, false);
    expect(row.querySelectorAll("button").length).toBe(0);
  });

  it("clicking a chip reports its index", () => {
    const row = document.createElement("div");
    const onSelect = vi.fn();
    renderChips(row, [opt("T4"), opt("head")], onSelect, false);
    (row.querySelectorAll("button")[1] as HTMLButtonElement).click();
    expect(onSelect).toHaveBeenCalledWith(1);
  });

  it("disabled while a command is in flight", () => {
    const row = document.createElement("div");
    renderChips(row, [opt("T4")], () => {}, true);
    expect((row.querySelector("button") as HTMLButtonElement).disabled).toBe(true);
  });
});
