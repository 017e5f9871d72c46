/** Editable keyboard-to-primitive bindings, bijective over bound keys. */

export const DEFAULT_BINDINGS: ReadonlyMap<string, string> = new Map([
  ["ArrowUp", "+z"],
  ["ArrowDown", "-z"],
  ["ArrowRight", "+x"],
  ["ArrowLeft", "-x"],
  ["w", "+rotY"],
  ["s", "-rotY"],
  ["a", "+rotZ"],
  ["d", "-rotZ"],
]);

export class KeyBindings {
  private byKey: Map<string, string>;

  constructor(bindings: ReadonlyMap<string, string> = DEFAULT_BINDINGS) {
    this.byKey = new Map();
    for (const [key, action] of bindings) {
      this.bind(key, action);
    }
  }

  /** Rebind a key; refuses a mapping that would break bijectivity. */
  bind(key: string, action: string): void {
    for (const [k, a] of this.byKey) {
      if (a === action && k !== key) {
        throw new Error(`action ${action} already bound to ${k}`);
      }
    }
    this.byKey.set(key, action);
  }

  unbind(key: string): void {
    this.byKey.delete(key);
  }

  actionFor(key: string): string | undefined {
    return this.byKey.get(key);
  }

  entries(): [string, string][] {
    return [...this.byKey.entries()];
  }
}
