#!/usr/bin/env node
/**
 * Figure generation from simulator CSVs.
 *
 * Usage:
 *   pursuitsim-figures membership --output membership.svg [--dead-band 0.1] [--ramp-end 0.2]
 *   pursuitsim-figures single     --output traj.svg trajectory.csv
 *   pursuitsim-figures sweep      --output sweep.svg --labels a,b,c t1.csv t2.csv t3.csv
 *   pursuitsim-figures samples    --output samples.svg trial*.csv
 *   pursuitsim-figures failures   --output fail.svg [--baseline pg] [--comparison los_iol]
 *                                 [--fraction 0.1] results.csv
 */

import { writeFileSync } from "fs";

import { readCsvFile } from "./csv.js";
import {
  campaignSamplesFigure,
  failureComparisonFigure,
  gainSweepFigure,
  membershipFigure,
  singleTrajectoryFigure,
} from "./figures.js";

interface Args {
  kind: string;
  output: string;
  inputs: string[];
  options: Map<string, string>;
}

const KINDS = ["membership", "single", "sweep", "samples", "failures"];

function parseArgs(argv: string[]): Args {
  if (argv.length === 0 || argv[0] === "--help" || argv[0] === "-h") {
    usage();
    process.exit(argv.length === 0 ? 2 : 0);
  }
  const kind = argv[0];
  if (!KINDS.includes(kind)) {
    throw new Error(`unknown figure kind ${JSON.stringify(kind)}; expected one of ${KINDS.join(", ")}`);
  }
  const options = new Map<string, string>();
  const inputs: string[] = [];
  for (let i = 1; i < argv.length; i++) {
    const arg = argv[i];
    if (arg.startsWith("--")) {
      const value = argv[++i];
      if (value === undefined) {
        throw new Error(`missing value for ${arg}`);
      }
      options.set(arg.slice(2), value);
    } else {
      inputs.push(arg);
    }
  }
  const output = options.get("output");
  if (!output) {
    throw new Error("--output is required");
  }
  options.delete("output");
  return { kind, output, inputs, options };
}

function numberOption(args: Args, name: string, fallback: number): number {
  const raw = args.options.get(name);
  if (raw === undefined) return fallback;
  const value = Number(raw);
  if (Number.isNaN(value)) {
    throw new Error(`--${name} expects a number, got ${JSON.stringify(raw)}`);
  }
  return value;
}

function render(args: Args): string {
  switch (args.kind) {
    case "membership":
      return membershipFigure(
        numberOption(args, "dead-band", 0.1),
        numberOption(args, "ramp-end", 0.2),
      );
    case "single": {
      if (args.inputs.length !== 1) throw new Error("single takes exactly one trajectory CSV");
      return singleTrajectoryFigure(readCsvFile(args.inputs[0]));
    }
    case "sweep": {
      if (args.inputs.length === 0) throw new Error("sweep needs at least one trajectory CSV");
      const labels = (args.options.get("labels") ?? "").split(",").filter((l) => l.length > 0);
      return gainSweepFigure(args.inputs.map(readCsvFile), labels);
    }
    case "samples": {
      if (args.inputs.length === 0) throw new Error("samples needs at least one trajectory CSV");
      return campaignSamplesFigure(args.inputs.map(readCsvFile));
    }
    case "failures": {
      if (args.inputs.length !== 1) throw new Error("failures takes exactly one results CSV");
      return failureComparisonFigure(
        readCsvFile(args.inputs[0]),
        args.options.get("baseline") ?? "pg",
        args.options.get("comparison") ?? "los_iol",
        numberOption(args, "fraction", 0.1),
      );
    }
    default:
      throw new Error(`unhandled kind ${args.kind}`);
  }
}

function usage(): void {
  console.error(
    "usage: pursuitsim-figures <membership|single|sweep|samples|failures> " +
    "--output FILE [options] [inputs...]",
  );
}

export function main(argv = process.argv.slice(2)): number {
  try {
    const args = parseArgs(argv);
    writeFileSync(args.output, render(args), "utf-8");
    console.log(`wrote ${args.output}`);
    return 0;
  } catch (error) {
    console.error(`error: ${error instanceof Error ? error.message : error}`);
    return 1;
  }
}

process.exit(main());
