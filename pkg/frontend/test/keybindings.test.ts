import { describe, expect, it } from "vitest";

import { DEFAULT_BINDINGS, KeyBindings } from "../src/keybindings.js";

describe("KeyBindings", () => {
  it("covers all eight primitives by default", () => {
    const kb = new KeyBindings();
    const actions = kb.entries().map(([, a]) => a).sort();
    expect(actions).toEqual(
      ["+rotY", "+rotZ", "+x", "+z", "-rotY", "-rotZ", "-x", "-z"].sort(),
    );
    expect(kb.actionFor("ArrowUp")).toBe("+z");
  });

  it("is bijective over bound keys", () => {
    const kb = new KeyBindings();
    expect(() => kb.bind("q", "+z")).toThrow();
  });

  it("supports rebinding by freeing the key first", () => {
    const kb = new KeyBindings();
    kb.unbind("ArrowUp");
    kb.bind("q", "+z");
    expect(kb.actionFor("q")).toBe("+z");
    expect(kb.actionFor("ArrowUp")).toBeUndefined();
  });

  it("default table matches the documented layout", () => {
    expect(DEFAULT_BINDINGS.get("w")).toBe("+rotY");
    expect(DEFAULT_BINDINGS.size).toBe(8);
  });
});
