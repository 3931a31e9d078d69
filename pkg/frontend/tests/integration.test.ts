/** Round-trip of the exported artifact back through the optimizer CLI.
 * Skipped when the `adaptopt` CLI is not on PATH. */

import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

const exportedXml = readFileSync(
  new URL("./fixtures/solution_1.xml", import.meta.url),
);

function cliAvailable(): boolean {
  return spawnSync("adaptopt", ["--help"], { stdio: "ignore" }).status === 0;
}

describe.skipIf(!cliAvailable())("CLI round trip", () => {
  it("exported workflow XML validates with exit 0", () => {
    const dir = mkdtempSync(join(tmpdir(), "pareto-export-"));
    const path = join(dir, "exported.xml");
    writeFileSync(path, exportedXml);
    const result = spawnSync("adaptopt", ["validate", path], {
      encoding: "utf8",
    });
    expect(result.status).toBe(0);
    expect(result.stdout).toContain("OK");
  });

  it("fixture bytes match what the server serves (canonical form)", () => {
    // the fixture was captured straight from a published run artifact;
    // canonical serialization is newline-terminated UTF-8
    const text = exportedXml.toString("utf8");
    expect(text.startsWith("<workflow ")).toBe(true);
    expect(text.endsWith("</workflow>\n")).toBe(true);
  });
});
