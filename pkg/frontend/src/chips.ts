import type { NodeRef } from "./types.js";

/**
 * Re-render the option chip row. Chips are rebuilt from scratch on every
 * call so the row can never drift from the snapshot that produced it.
 */
export function renderChips(
  container: HTMLElement,
  options: NodeRef[],
  onSelect: (index: number) => void,
  disabled: boolean,
): void {
  container.textContent = "";
  options.slice(0, 2).forEach((option, index) => {
    const chip = document.createElement("button");
    chip.type = "button";
    chip.className = "chip";
    chip.textContent = option.name;
    chip.disabled = disabled;
    chip.addEventListener("click", () => onSelect(index));
    container.appendChild(chip);
  });
}
