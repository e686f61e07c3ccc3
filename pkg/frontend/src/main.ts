import { createHash } from "crypto";
import { mkdirSync, readFileSync, writeFileSync } from "fs";
import { dirname, resolve } from "path";

import { SchemaError } from "./csv.js";
import { render } from "./figures.js";
import { manifestSchema } from "./types.js";

function sha256(text: string): string {
  return createHash("sha256").update(text, "utf-8").digest("hex");
}

export function main(argv: string[]): number {
  const idx = argv.indexOf("--manifest");
  if (idx === -1 || idx + 1 >= argv.length) {
    console.error("usage: main --manifest <manifest.json>");
    return 1;
  }
  const manifestPath = resolve(argv[idx + 1]);
  let manifest;
  try {
    manifest = manifestSchema.parse(JSON.parse(readFileSync(manifestPath, "utf-8")));
  } catch (err) {
    console.error(`invalid manifest: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
  const baseDir = dirname(manifestPath);
  const outDir = resolve(baseDir, manifest.outDir);
  mkdirSync(outDir, { recursive: true });

  for (const spec of manifest.figures) {
    let first;
    let second;
    try {
      first = render(spec, baseDir);
      second = render(spec, baseDir); // re-render to prove determinism
    } catch (err) {
      if (err instanceof SchemaError) {
        console.error(`error [${spec.output}]: ${err.message}`);
        return 1;
      }
      throw err;
    }
    const checksum = sha256(first.svg);
    const stable = checksum === sha256(second.svg);
    const outPath = resolve(outDir, spec.output);
    mkdirSync(dirname(outPath), { recursive: true });
    writeFileSync(outPath, first.svg, "utf-8");
    let note = "";
    if (first.overlayResidual !== undefined) {
      note = ` overlay residual ${(first.overlayResidual * 100).toFixed(2)}%`;
      if (first.overlayResidual >= 0.05) {
        console.error(`error [${spec.output}]: overlay residual ${(first.overlayResidual * 100).toFixed(2)}% exceeds 5%`);
        return 1;
      }
    }
    console.log(`${spec.output}: sha256=${checksum.slice(0, 16)} stable=${stable}${note}`);
    if (!stable) {
      console.error(`error [${spec.output}]: re-render produced different bytes`);
      return 1;
    }
  }
  return 0;
}

process.exitCode = main(process.argv.slice(2));
