import { spawn } from "node:child_process";
import { get } from "node:http";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

export interface TestServer {
  baseUrl: string;
  stop(): void;
}

const SERVER_SCRIPT = join(dirname(fileURLToPath(import.meta.url)), "server.py");

/** Spawn the real HTTP service in a python subprocess and wait until it
 * answers. The tests then talk to it exactly like a browser would. */
export async function startServer(): Promise<TestServer> {
  const proc = spawn("python3", [SERVER_SCRIPT], { stdio: ["ignore", "pipe", "pipe"] });
  let stderrBuf = "";
  proc.stderr.on("data", (chunk: Buffer) => {
    stderrBuf += chunk.toString();
  });

  const port = await new Promise<number>((resolve, reject) => {
    let out = "";
    const timer = setTimeout(() => {
      reject(new Error(`server did not print its port within 60s\nstderr:\n${stderrBuf}`));
    }, 60_000);
    proc.stdout.on("data", (chunk: Buffer) => {
      out += chunk.toString();
      const m = out.match(/PORT=(\d+)/);
      if (m !== null) {
        clearTimeout(timer);
        resolve(Number(m[1]));
      }
    });
    proc.on("exit", (code) => {
      clearTimeout(timer);
      reject(new Error(`server exited before printing its port (code ${code})\nstderr:\n${stderrBuf}`));
    });
  });

  const baseUrl = `http://127.0.0.1:${port}`;
  const deadline = Date.now() + 60_000;
  // Probe over node:http directly: the DOM environment's fetch enforces
  // same-origin policy, and the page URL is only pointed at the server
  // after this helper returns.
  while (!(await probe(`${baseUrl}/datasets`))) {
    if (Date.now() > deadline) {
      proc.kill("SIGKILL");
      throw new Error(`server never became ready at ${baseUrl}\nstderr:\n${stderrBuf}`);
    }
    await sleep(100);
  }

  return {
    baseUrl,
    stop: () => {
      proc.kill("SIGTERM");
    },
  };
}

function probe(url: string): Promise<boolean> {
  return new Promise((resolve) => {
    const req = get(url, (res) => {
      res.resume();
      resolve(res.statusCode !== undefined && res.statusCode < 500);
    });
    req.on("error", () => resolve(false));
    req.setTimeout(2000, () => {
      req.destroy();
      resolve(false);
    });
  });
}

export function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

/** Poll until `fn` returns a truthy value (the happy-dom stand-in for a
 * browser driver's wait-for-element). */
export async function waitFor<T>(
  fn: () => T | null | undefined | false,
  label = "condition",
  timeoutMs = 30_000,
): Promise<T> {
  const deadline = Date.now() + timeoutMs;
  for (;;) {
    const value = fn();
    if (value) return value;
    if (Date.now() > deadline) throw new Error(`timed out waiting for ${label}`);
    await sleep(15);
  }
}
