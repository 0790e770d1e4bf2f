// Strict IOB validation of CoNLL text, used to check server exports.

const COMPONENT_LABELS = new Set(["Claim", "Premise", "MajorClaim"]);

export function validateStrictIob(conll: string): void {
  let previous: { prefix: string; label: string | null } = { prefix: "O", label: null };
  const lines = conll.split("\n");
  lines.forEach((line, i) => {
    if (line === "" || line.startsWith("#doc ")) {
      previous = { prefix: "O", label: null };
      return;
    }
    const tab = line.indexOf("\t");
    if (tab <= 0) throw new Error(`line ${i + 1}: expected token<TAB>tag, got ${line}`);
    const tag = line.slice(tab + 1);
    if (tag === "O") {
      previous = { prefix: "O", label: null };
      return;
    }
    const prefix = tag.slice(0, 2);
    const label = tag.slice(2);
    if ((prefix !== "B-" && prefix !== "I-") || !COMPONENT_LABELS.has(label)) {
      throw new Error(`line ${i + 1}: invalid tag ${tag}`);
    }
    if (prefix === "I-" && previous.label !== label) {
      throw new Error(`line ${i + 1}: I-${label} without opening B-`);
    }
    previous = { prefix, label };
  });
}
