// @vitest-environment jsdom
//
// End-to-end: spawn the real Python service, drive the UI code against it
// over HTTP, and check that what lands in the DOM is exactly what the API
// said — the UI must add no numbers of its own.
import { spawn, ChildProcess } from "node:child_process";
import { createServer } from "node:net";
import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../../src/api.js";
import { App, AppElements } from "../../src/app.js";
import { formatMicro } from "../../src/render.js";
import { defaultForm, ScenarioForm } from "../../src/state.js";

const FRONTEND_ROOT = join(dirname(fileURLToPath(import.meta.url)), "..", "..");

let service: ChildProcess;
let base: string;
const observed: unknown[] = [];

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.listen(0, "127.0.0.1", () => {
      const address = probe.address();
      if (address && typeof address === "object") {
        const port = address.port;
        probe.close(() => resolve(port));
      } else {
        reject(new Error("no port"));
      }
    });
  });
}

async function waitForHealth(url: string, timeoutMs = 30000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  for (;;) {
    try {
      const response = await fetch(`${url}/v1/health`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error("service did not come up");
    await new Promise((r) => setTimeout(r, 250));
  }
}

/** fetch wrapper that records every JSON body the server returns. */
const recordingFetch: typeof fetch = async (input, init) => {
  const response = await fetch(input, init);
  observed.push(await response.clone().json());
  return response;
};

function collectNumbers(value: unknown, into: Set<string>): void {
  if (typeof value === "number") {
    into.add(String(value));
  } else if (Array.isArray(value)) {
    value.forEach((v) => collectNumbers(v, into));
  } else if (value && typeof value === "object") {
    Object.values(value).forEach((v) => collectNumbers(v, into));
  }
}

function mountUi(): AppElements {
  const html = readFileSync(join(FRONTEND_ROOT, "index.html"), "utf-8");
  document.documentElement.innerHTML = html;
  return {
    form: document.getElementById("scenario-form") as HTMLElement,
    results: document.getElementById("results") as HTMLElement,
    banner: document.getElementById("banner") as HTMLElement,
    comparison: document.getElementById("comparison") as HTMLElement,
  };
}

beforeAll(async () => {
  const port = await freePort();
  base = `http://127.0.0.1:${port}`;
  service = spawn("python3", ["-m", "fabdecide.cli", "serve", "--port", String(port)], {
    stdio: "ignore",
  });
  await waitForHealth(base);
});

afterAll(() => {
  service?.kill();
});

describe("UI mirrors the server exactly", () => {
  it("renders the production example's unit cost as the API reports it", async () => {
    const elements = mountUi();
    const app = new App(new ApiClient(base, recordingFetch), elements);
    const form: ScenarioForm = {
      ...defaultForm(),
      technologyId: "tsmc65",
      dieAreaMm2: 100,
      volume: 1_000_000,
      d0PerMm2: 0.0025,
      edgeExclusionMm: 0,
      scribeMm: 0,
    };
    await app.submitScenario("production", form);

    const rendered = document.getElementById("unit-cost")!.textContent;

    // Ask the API directly for the same scenario.
    const direct = await fetch(`${base}/v1/estimate/production`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({
        technology_id: "tsmc65",
        die_area_mm2: 100,
        volume: 1_000_000,
        wafer: { edge_exclusion_mm: 0, scribe_mm: 0 },
        yield: { model: "poisson", d0_per_mm2: 0.0025 },
      }),
    });
    const body = await direct.json();
    expect(body.unit_cost_micro).toBe(4_514_000);
    expect(rendered).toBe(formatMicro(body.unit_cost_micro, body.currency));
    expect(rendered).toBe("$4.514000");
  });

  it("GHz requirement renders a ranking without any 180 nm row", async () => {
    const elements = mountUi();
    const app = new App(new ApiClient(base, recordingFetch), elements);
    const form: ScenarioForm = {
      ...defaultForm(),
      requiredFHz: 5e9,
      requiredVoltageV: 1.2,
      requiredCapDensity: 0,
      dieAreaMm2: 30,
      volume: 500_000,
      businessCategory: "cat2",
    };
    await app.submitScenario("select", form);

    const rows = [...document.querySelectorAll("tr[data-tech]")];
    expect(rows.length).toBeGreaterThan(0);
    const techs = rows.map((r) => r.getAttribute("data-tech"));
    expect(techs).not.toContain("tsmc180gp");
    expect(techs).not.toContain("gen350");
    expect(techs).toContain("tsmc65");
  });

  it("every number in the DOM came from a server response", async () => {
    const serverNumbers = new Set<string>();
    observed.forEach((body) => collectNumbers(body, serverNumbers));
    const tagged = [...document.querySelectorAll("[data-n]")];
    expect(tagged.length).toBeGreaterThan(0);
    for (const node of tagged) {
      expect(serverNumbers.has(node.getAttribute("data-n")!)).toBe(true);
    }
  });

  it("invalid volume never reaches the network", async () => {
    const elements = mountUi();
    let calls = 0;
    const countingFetch: typeof fetch = async (input, init) => {
      calls += 1;
      return fetch(input, init);
    };
    const app = new App(new ApiClient(base, countingFetch), elements);
    await app.submitScenario("production", { ...defaultForm(), volume: 0 });
    expect(calls).toBe(0);
    expect(document.querySelector(".banner.error")).not.toBeNull();
  });

  it("serves the built UI shell under /ui", async () => {
    const response = await fetch(`${base}/ui/`);
    expect(response.status).toBe(200);
    const text = await response.text();
    expect(text).toContain("scenario-form");
  });
});
