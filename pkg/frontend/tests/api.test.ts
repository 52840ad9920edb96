import { describe, expect, it } from "vitest";

import { Api, ApiError, documentPoints, encodeMultipart } from "../src/api.js";
import type { Transport } from "../src/api.js";
import { curveDoc, fixedNDoc, minNDoc, singleDoc } from "./fixtures.js";

interface Call {
  url: string;
  method: string;
  headers: Record<string, string>;
  body?: string | Uint8Array;
}

/** Transport that replays a fixed script of responses and records requests. */
const scripted = (responses: { status: number; body: unknown }[]) => {
  const calls: Call[] = [];
  const transport: Transport = async (url, init) => {
    calls.push({ url, method: init.method, headers: init.headers, body: init.body });
    const next = responses.shift();
    if (!next) throw new Error(`unscripted request to ${url}`);
    return next;
  };
  return { transport, calls };
};

describe("Api request and response handling", () => {
  it("posts JSON and returns a 200 document unchanged", async () => {
    const doc = singleDoc();
    const { transport, calls } = scripted([{ status: 200, body: doc }]);
    const api = new Api("http://x", { transport });
    const result = await api.sampleSizeSingle({ auroc: 0.81, prevalence: 0.2, ci_width: 0.1 });
    expect(result).toEqual(doc);
    expect(calls[0]!.url).toBe("http://x/api/v1/sample-size/single");
    expect(calls[0]!.headers["content-type"]).toBe("application/json");
    expect(JSON.parse(calls[0]!.body as string)).toEqual({
      auroc: 0.81,
      prevalence: 0.2,
      ci_width: 0.1,
    });
  });

  it("strips a trailing slash from the base URL", async () => {
    const { transport, calls } = scripted([{ status: 200, body: singleDoc() }]);
    const api = new Api("http://x/", { transport });
    await api.sampleSizeSingle({ auroc: 0.8, prevalence: 0.2, ci_width: 0.1 });
    expect(calls[0]!.url).toBe("http://x/api/v1/sample-size/single");
  });

  it("maps a 422 issue list onto ApiError with per-field issues", async () => {
    const issues = [
      { loc: ["body", "auroc"], msg: "Input should be less than 1", type: "less_than" },
      { loc: ["body", "ci_width"], msg: "Field required", type: "missing" },
    ];
    const { transport } = scripted([{ status: 422, body: { detail: issues } }]);
    const api = new Api("", { transport });
    const error = await api
      .sampleSizeSingle({ auroc: 2, prevalence: 0.2, ci_width: 0.1 })
      .catch((e: unknown) => e);
    expect(error).toBeInstanceOf(ApiError);
    const apiError = error as ApiError;
    expect(apiError.status).toBe(422);
    expect(apiError.issues).toHaveLength(2);
    expect(apiError.message).toBe(
      "auroc: Input should be less than 1; ci_width: Field required",
    );
  });

  it("maps string details from 400 and 413 responses", async () => {
    const { transport } = scripted([
      { status: 400, body: { detail: "malformed JSON body" } },
      { status: 413, body: { detail: "uploaded file exceeds 5242880 bytes" } },
    ]);
    const api = new Api("", { transport });
    const badJson = (await api
      .sampleSizeSingle({ auroc: 0.8, prevalence: 0.2, ci_width: 0.1 })
      .catch((e: unknown) => e)) as ApiError;
    expect(badJson.status).toBe(400);
    expect(badJson.message).toBe("malformed JSON body");
    expect(badJson.issues).toEqual([]);

    const tooBig = (await api
      .sampleSizeSingle({ auroc: 0.8, prevalence: 0.2, ci_width: 0.1 })
      .catch((e: unknown) => e)) as ApiError;
    expect(tooBig.status).toBe(413);
    expect(tooBig.message).toMatch(/5242880/);
  });

  it("falls back to a status message when the error body is unusable", async () => {
    const { transport } = scripted([{ status: 500, body: null }]);
    const api = new Api("", { transport });
    const error = (await api
      .sampleSizeSingle({ auroc: 0.8, prevalence: 0.2, ci_width: 0.1 })
      .catch((e: unknown) => e)) as ApiError;
    expect(error.message).toBe("request failed with status 500");
  });

  it("follows a 202 ticket through running to done", async () => {
    const doc = curveDoc();
    const { transport, calls } = scripted([
      { status: 202, body: { job_id: "j1", status_url: "/api/v1/jobs/j1" } },
      { status: 200, body: { status: "running" } },
      { status: 200, body: { status: "done", result: doc } },
    ]);
    const api = new Api("http://x", { transport, pollIntervalMs: 1 });
    const result = await api.powerBinormal({
      params: {
        mu_case_a: 0.44,
        mu_case_b: 0.41,
        mu_ctrl_a: 0.17,
        mu_ctrl_b: 0.17,
        prevalence: 0.2,
      },
      n_grid: [100, 200],
    });
    expect(result).toEqual(doc);
    expect(calls.map((c) => c.url)).toEqual([
      "http://x/api/v1/power/binormal",
      "http://x/api/v1/jobs/j1",
      "http://x/api/v1/jobs/j1",
    ]);
    expect(calls[1]!.method).toBe("GET");
  });

  it("turns a failed job into an ApiError carrying the detail", async () => {
    const { transport } = scripted([
      { status: 202, body: { job_id: "j2", status_url: "/api/v1/jobs/j2" } },
      { status: 200, body: { status: "failed", detail: "n_grid must be strictly increasing" } },
    ]);
    const api = new Api("", { transport, pollIntervalMs: 1 });
    const error = (await api
      .powerPilotInline({ labels: [0, 1], scores_a: [0.1, 0.9], scores_b: [0.2, 0.8], n: 50 })
      .catch((e: unknown) => e)) as ApiError;
    expect(error).toBeInstanceOf(ApiError);
    expect(error.message).toBe("n_grid must be strictly increasing");
  });

  it("gives up after maxPolls attempts", async () => {
    const running = Array.from({ length: 5 }, () => ({
      status: 200,
      body: { status: "running" },
    }));
    const { transport } = scripted([
      { status: 202, body: { job_id: "j3", status_url: "/api/v1/jobs/j3" } },
      ...running,
    ]);
    const api = new Api("", { transport, pollIntervalMs: 1, maxPolls: 3 });
    const error = (await api
      .powerPilotInline({ labels: [0, 1], scores_a: [0.1, 0.9], scores_b: [0.2, 0.8], n: 50 })
      .catch((e: unknown) => e)) as ApiError;
    expect(error.status).toBe(504);
  });
});

describe("upload field assembly", () => {
  it("sends every populated form field plus the file part", async () => {
    const { transport, calls } = scripted([{ status: 200, body: curveDoc() }]);
    const api = new Api("", { transport });
    await api.powerPilotUpload({
      csvText: "label,pred_a,pred_b\n1,0.9,0.8\n0,0.2,0.3\n",
      filename: "pilot.csv",
      n_grid: [100, 200, 400],
      mc: { seed: 7, alpha: 0.05, iterations: 400 },
      prevalence: 0.25,
      lenient: true,
    });
    const call = calls[0]!;
    expect(call.url).toBe("/api/v1/power/pilot/upload");
    const contentType = call.headers["content-type"]!;
    expect(contentType).toMatch(/^multipart\/form-data; boundary=/);
    const text = new TextDecoder().decode(call.body as Uint8Array);
    expect(text).toContain('name="n_grid"\r\n\r\n100,200,400');
    expect(text).toContain('name="seed"\r\n\r\n7');
    expect(text).toContain('name="alpha"\r\n\r\n0.05');
    expect(text).toContain('name="iterations"\r\n\r\n400');
    expect(text).toContain('name="prevalence"\r\n\r\n0.25');
    expect(text).toContain('name="lenient"\r\n\r\ntrue');
    expect(text).toContain('name="file"; filename="pilot.csv"');
    expect(text).not.toContain('name="n"\r\n'); // unset fields stay out of the form
    expect(text).not.toContain('name="target_power"');
  });

  it("omits optional fields left at their defaults", async () => {
    const { transport, calls } = scripted([{ status: 200, body: fixedNDoc() }]);
    const api = new Api("", { transport });
    await api.powerPilotUpload({
      csvText: "label,pred_a,pred_b\n1,0.9,0.8\n",
      filename: "demo.csv",
      n: 400,
    });
    const text = new TextDecoder().decode(calls[0]!.body as Uint8Array);
    expect(text).toContain('name="n"\r\n\r\n400');
    expect(text).not.toContain('name="prevalence"');
    expect(text).not.toContain('name="lenient"');
    expect(text).not.toContain('name="delimiter"');
  });
});

describe("encodeMultipart", () => {
  it("produces a CRLF-framed body that ends with the closing boundary", () => {
    const { body, contentType } = encodeMultipart(
      { n: "400", seed: "7" },
      { name: "file", filename: "a.csv", contentType: "text/csv", text: "label\n1\n" },
    );
    const boundary = contentType.split("boundary=")[1]!;
    const text = new TextDecoder().decode(body);
    const parts = text.split(`--${boundary}`);
    // Leading empty chunk, two fields, one file, trailing "--\r\n".
    expect(parts).toHaveLength(5);
    expect(text.endsWith(`--${boundary}--\r\n`)).toBe(true);
    expect(text).toContain("Content-Type: text/csv\r\n\r\nlabel\n1\n");
    // Every part's framing is CRLF even though the payload uses bare LF.
    for (const part of parts.slice(1, 4)) {
      expect(part.startsWith("\r\nContent-Disposition: form-data;")).toBe(true);
      expect(part.endsWith("\r\n")).toBe(true);
    }
  });

  it("sanitizes hostile filenames instead of breaking the frame", () => {
    const { body } = encodeMultipart(
      {},
      {
        name: "file",
        filename: 'evil"\r\nX-Injected: 1.csv',
        contentType: "text/csv",
        text: "x",
      },
    );
    const text = new TextDecoder().decode(body);
    expect(text).toContain('filename="evil___X-Injected: 1.csv"');
    expect(text).not.toContain("X-Injected: 1\r\n");
  });

  it("uses a fresh boundary per encode", () => {
    const file = { name: "file", filename: "a.csv", contentType: "text/csv", text: "x" };
    const a = encodeMultipart({}, file).contentType;
    const b = encodeMultipart({}, file).contentType;
    expect(a).not.toBe(b);
  });
});

describe("documentPoints", () => {
  it("reads curve documents", () => {
    const points = documentPoints(curveDoc());
    expect(points.map((p) => p.n)).toEqual([100, 200, 400, 700, 1000]);
  });

  it("reads min-n documents through the evaluated trail", () => {
    const points = documentPoints(minNDoc());
    expect(points.length).toBeGreaterThan(0);
    expect(points.every((p) => typeof p.power === "number")).toBe(true);
  });

  it("wraps a single-n document in a one-point list", () => {
    const points = documentPoints(fixedNDoc());
    expect(points).toHaveLength(1);
    expect(points[0]!.n).toBe(400);
  });

  it("returns an empty list for documents without power results", () => {
    expect(documentPoints(singleDoc())).toEqual([]);
  });
});
