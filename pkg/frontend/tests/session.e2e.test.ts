// Scripted round trip against the real backend: a human Player I on b2
// playing [{x},{y}] every inning reaches the inning-1 win banner; state
// refetch reproduces the rendered board; engine replies stay under 200 ms.

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { banner, deriveBoard } from "../src/model.js";

let proc: ChildProcess;
let base = "";

beforeAll(async () => {
  proc = spawn("python3", ["-m", "latticegames.cli", "serve", "--port", "0"],
    { cwd: "..", stdio: ["ignore", "pipe", "pipe"] });
  base = await new Promise<string>((resolve, reject) => {
    const timer = setTimeout(() => reject(new Error("server did not start")), 15000);
    proc.stdout!.on("data", (chunk: Buffer) => {
      const m = chunk.toString().match(/serving on (http:\/\/[\d.]+:\d+)/);
      if (m) {
        clearTimeout(timer);
        resolve(m[1]!);
      }
    });
    proc.stderr!.on("data", () => {});
    proc.on("exit", () => reject(new Error("server exited early")));
  });
}, 20000);

afterAll(() => {
  proc?.kill();
});

describe("scripted human Player I session on b2", () => {
  it("reaches the Player II win banner at inning 1", async () => {
    const api = new ApiClient(base);
    const cat = await api.catalog();
    expect(cat.lattices).toContain("b2");

    let session = await api.createSession(
      { lattice: "b2", game: "G1", human_role: "I", depth: 4 });
    const layout = session.layout!;
    expect(layout.primes.sort()).toEqual(["{x}", "{y}"]);

    const latencies: number[] = [];
    for (let inning = 0; inning < 4 && session.state.status !== "finished";
         inning += 1) {
      const t0 = Date.now();
      session = await api.move(session.session_id,
        { type: "cover", items: ["{x}", "{y}"] });
      latencies.push(Date.now() - t0);
    }

    expect(session.outcome).toEqual({ status: "WonByII", inning: 1 });
    expect(banner(session)).toBe("Player II wins at inning 1");
    expect(session.state.running_join).toBe("{x,y}");
    for (const ms of latencies) expect(ms).toBeLessThan(200);

    // refetching state reproduces the rendered board exactly
    const refetched = await api.state(session.session_id);
    const a = deriveBoard(layout, session, []);
    const b = deriveBoard(layout, refetched, []);
    expect(b).toEqual(a);

    // explanatory panels come verbatim from the engine's reports
    const rep = await api.report(session.session_id);
    expect(Array.isArray(rep.panels)).toBe(true);
    expect(rep.panels.length).toBeGreaterThan(0);
  }, 20000);

  it("surfaces non-cover rejections without changing state", async () => {
    const api = new ApiClient(base);
    const session = await api.createSession(
      { lattice: "b2", game: "G1", human_role: "I", depth: 3 });
    await expect(api.move(session.session_id,
      { type: "cover", items: ["{x}"] })).rejects.toMatchObject(
      { errorName: "SessionError" });
    const after = await api.state(session.session_id);
    expect(after.state.inning).toBe(0);
    expect(after.state.history).toEqual([]);
  }, 20000);

  it("refuses m3 in strict mode with the witness pair", async () => {
    const api = new ApiClient(base);
    await expect(api.createSession(
      { lattice: "m3", game: "G1", human_role: "I", depth: 3 }))
      .rejects.toMatchObject({ errorName: "SessionError" });
  }, 20000);
});
