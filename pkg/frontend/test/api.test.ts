import { describe, expect, it } from "vitest";
import { ApiClient, ApiError, type FetchLike } from "../src/api";
import { FakeBackend } from "./fake";

describe("ApiClient", () => {
  it("extracts the server's detail message from error bodies", async () => {
    const fetchFn: FetchLike = async () =>
      new Response(JSON.stringify({ detail: "unknown session zzz" }), { status: 404 });
    const client = new ApiClient("", fetchFn);
    const err = await client.getState("zzz").catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(404);
    expect((err as ApiError).detail).toBe("unknown session zzz");
    expect((err as ApiError).message).toContain("HTTP 404");
  });

  it("falls back to the status text when the error body is not JSON", async () => {
    const fetchFn: FetchLike = async () =>
      new Response("<html>boom</html>", { status: 500, statusText: "Internal Server Error" });
    const client = new ApiClient("", fetchFn);
    const err = await client.getDatasets().catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(500);
    expect((err as ApiError).detail).toBe("Internal Server Error");
  });

  it("wraps transport failures as status 0", async () => {
    const fetchFn: FetchLike = () => Promise.reject(new TypeError("ECONNREFUSED"));
    const client = new ApiClient("http://127.0.0.1:9", fetchFn);
    const err = await client.getDatasets().catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(0);
    expect((err as ApiError).message).toContain("network error");
  });

  it("builds urls from the base url and sends JSON bodies", async () => {
    const seen: { url: string; init?: RequestInit }[] = [];
    const fetchFn: FetchLike = async (url, init) => {
      seen.push({ url, init });
      return new Response(JSON.stringify({ ok: true }), { status: 200 });
    };
    const client = new ApiClient("http://srv:1234", fetchFn);

    await client.createSession({ T: 5, theta: 100, seed: 7 });
    expect(seen[0].url).toBe("http://srv:1234/sessions");
    expect(seen[0].init?.method).toBe("POST");
    expect(JSON.parse(String(seen[0].init?.body))).toEqual({ T: 5, theta: 100, seed: 7 });

    await client.getRanking("abc", 7);
    expect(seen[1].url).toBe("http://srv:1234/sessions/abc/ranking?k=7");

    await client.postAnswer("abc", 42);
    expect(JSON.parse(String(seen[2].init?.body))).toEqual({ preferred: 42 });

    await client.stopSession("abc");
    expect(seen[3].url).toBe("http://srv:1234/sessions/abc/stop");
    expect(seen[3].init?.method).toBe("POST");
    expect(seen[3].init?.body).toBeUndefined();
  });

  it("round-trips typed payloads against the fake service", async () => {
    const be = new FakeBackend(2);
    const client = new ApiClient("", be.fetch);

    const datasets = await client.getDatasets();
    expect(datasets.default).toBe("demo");
    expect(datasets.datasets[0].measure_names).toEqual(["alpha", "beta", "gamma"]);

    const state = await client.createSession({ T: 2 });
    expect(state.id).toBe("s1");
    expect(state.weights).toEqual(be.weightsAt(0));

    const query = await client.getQuery(state.id);
    expect(query.pair).toHaveLength(2);

    const answered = await client.postAnswer(state.id, query.pair[0].id);
    expect(answered.t).toBe(1);
    expect(answered.weights).toEqual(be.weightsAt(1));
    expect(answered.top.length).toBeGreaterThan(0);
  });
});
