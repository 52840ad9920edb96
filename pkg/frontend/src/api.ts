// Typed client for the /api/v1 endpoints.
//
// All numbers shown in the UI come from these calls; the client never
// computes a statistic itself. Multipart bodies are assembled by hand so
// the same code runs under browser fetch and under node during e2e runs,
// with no dependence on ambient FormData implementations.

export interface FieldIssue {
  loc: (string | number)[];
  msg: string;
  type: string;
}

export class ApiError extends Error {
  readonly status: number;
  readonly issues: FieldIssue[];

  constructor(status: number, detail: string | FieldIssue[]) {
    super(typeof detail === "string" ? detail : summarizeIssues(detail));
    this.status = status;
    this.issues = typeof detail === "string" ? [] : detail;
  }
}

function summarizeIssues(issues: FieldIssue[]): string {
  if (issues.length === 0) return "request rejected";
  return issues
    .map((issue) => {
      const path = issue.loc.filter((p) => p !== "body").join(".");
      return path ? `${path}: ${issue.msg}` : issue.msg;
    })
    .join("; ");
}

export interface PowerPoint {
  n: number;
  power: number;
  mc_se: number;
  degenerate_draws: number;
}

export interface AurocPayload {
  theta_hat: number;
  se: number;
  ci_low: number;
  ci_high: number;
  n_cases: number;
  n_controls: number;
}

export interface ResultDocument {
  schema: string;
  tool_version: string;
  calculation: string;
  inputs: Record<string, unknown>;
  results: Record<string, unknown>;
  advisories: string[];
}

export interface DensityGridPayload {
  x: number[];
  y: number[];
  z: number[][];
  peak_density: number;
  mean_x: number;
  mean_y: number;
}

export interface McRequest {
  seed?: number;
  alpha?: number;
  iterations?: number;
}

export interface EvaluateRequest {
  n?: number;
  n_grid?: number[];
  target_power?: number;
  n_min?: number;
  n_max?: number;
  mc?: McRequest;
}

export interface BinormalParamsRequest {
  mu_case_a: number;
  mu_case_b: number;
  mu_ctrl_a: number;
  mu_ctrl_b: number;
  v_case_a?: number;
  v_case_b?: number;
  v_ctrl_a?: number;
  v_ctrl_b?: number;
  r_case?: number;
  r_ctrl?: number;
  prevalence: number;
}

export interface UploadRequest extends EvaluateRequest {
  csvText: string;
  filename: string;
  prevalence?: number;
  lenient?: boolean;
  label_column?: string;
  score_a_column?: string;
  score_b_column?: string;
  delimiter?: string;
}

/** Power-curve rows carried by a document, matching the CLI's curve CSV. */
export function documentPoints(doc: ResultDocument): PowerPoint[] {
  const results = doc.results as {
    curve?: PowerPoint[];
    power?: PowerPoint;
    min_n?: { evaluated: PowerPoint[] };
  };
  if (results.curve) return results.curve;
  if (results.min_n) return results.min_n.evaluated;
  if (results.power) return [results.power];
  return [];
}

interface HttpResponse {
  status: number;
  body: unknown;
}

export type Transport = (
  url: string,
  init: { method: string; headers: Record<string, string>; body?: string | Uint8Array },
) => Promise<HttpResponse>;

const fetchTransport: Transport = async (url, init) => {
  const response = await fetch(url, {
    method: init.method,
    headers: init.headers,
    body: init.body as BodyInit | undefined,
  });
  const text = await response.text();
  let body: unknown = null;
  if (text) {
    try {
      body = JSON.parse(text);
    } catch {
      body = text;
    }
  }
  return { status: response.status, body };
};

export interface ApiOptions {
  transport?: Transport;
  /** Delay between 202 job polls, in ms. */
  pollIntervalMs?: number;
  /** Give up polling after this many attempts. */
  maxPolls?: number;
}

export class Api {
  readonly baseUrl: string;
  private readonly transport: Transport;
  private readonly pollIntervalMs: number;
  private readonly maxPolls: number;

  constructor(baseUrl = "", options: ApiOptions = {}) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.transport = options.transport ?? fetchTransport;
    this.pollIntervalMs = options.pollIntervalMs ?? 250;
    this.maxPolls = options.maxPolls ?? 2400;
  }

  async health(): Promise<{ status: string; version: string }> {
    const res = await this.transport(`${this.baseUrl}/health`, {
      method: "GET",
      headers: {},
    });
    if (res.status !== 200) throw toApiError(res);
    return res.body as { status: string; version: string };
  }

  async sampleSizeSingle(body: {
    auroc: number;
    prevalence: number;
    ci_width: number;
  }): Promise<ResultDocument> {
    return this.postJson("/api/v1/sample-size/single", body);
  }

  async powerPilotInline(
    body: EvaluateRequest & {
      labels: number[];
      scores_a: number[];
      scores_b: number[];
      prevalence?: number;
    },
  ): Promise<ResultDocument> {
    return this.postForResult("/api/v1/power/pilot", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async powerPilotUpload(request: UploadRequest): Promise<ResultDocument> {
    const fields: Record<string, string> = {};
    const put = (name: string, value: number | string | boolean | undefined) => {
      if (value !== undefined) fields[name] = String(value);
    };
    put("n", request.n);
    put("n_grid", request.n_grid?.join(","));
    put("target_power", request.target_power);
    put("n_min", request.n_min);
    put("n_max", request.n_max);
    put("seed", request.mc?.seed);
    put("alpha", request.mc?.alpha);
    put("iterations", request.mc?.iterations);
    put("prevalence", request.prevalence);
    put("lenient", request.lenient);
    put("label_column", request.label_column);
    put("score_a_column", request.score_a_column);
    put("score_b_column", request.score_b_column);
    put("delimiter", request.delimiter);
    const { body, contentType } = encodeMultipart(fields, {
      name: "file",
      filename: request.filename,
      contentType: "text/csv",
      text: request.csvText,
    });
    return this.postForResult("/api/v1/power/pilot/upload", {
      method: "POST",
      headers: { "content-type": contentType },
      body,
    });
  }

  async powerBinormal(
    body: EvaluateRequest & { params: BinormalParamsRequest },
  ): Promise<ResultDocument> {
    return this.postForResult("/api/v1/power/binormal", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async binormalPreview(body: {
    params: BinormalParamsRequest;
    grid_resolution?: number;
  }): Promise<ResultDocument> {
    return this.postJson("/api/v1/binormal/preview", body);
  }

  async jobStatus(
    statusUrl: string,
  ): Promise<{ status: string; result?: ResultDocument; detail?: string }> {
    const res = await this.transport(`${this.baseUrl}${statusUrl}`, {
      method: "GET",
      headers: {},
    });
    if (res.status !== 200) throw toApiError(res);
    return res.body as { status: string; result?: ResultDocument; detail?: string };
  }

  private async postJson(path: string, payload: unknown): Promise<ResultDocument> {
    return this.postForResult(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  private async postForResult(
    path: string,
    init: { method: string; headers: Record<string, string>; body?: string | Uint8Array },
  ): Promise<ResultDocument> {
    const res = await this.transport(`${this.baseUrl}${path}`, init);
    if (res.status === 202) {
      const ticket = res.body as { job_id: string; status_url: string };
      return this.awaitJob(ticket.status_url);
    }
    if (res.status !== 200) throw toApiError(res);
    return res.body as ResultDocument;
  }

  private async awaitJob(statusUrl: string): Promise<ResultDocument> {
    for (let attempt = 0; attempt < this.maxPolls; attempt++) {
      const status = await this.jobStatus(statusUrl);
      if (status.status === "done" && status.result) return status.result;
      if (status.status === "failed") {
        throw new ApiError(422, status.detail ?? "the computation failed");
      }
      await sleep(this.pollIntervalMs);
    }
    throw new ApiError(504, "timed out waiting for the computation to finish");
  }
}

function toApiError(res: HttpResponse): ApiError {
  const body = res.body as { detail?: string | FieldIssue[] } | string | null;
  if (body && typeof body === "object" && body.detail !== undefined) {
    return new ApiError(res.status, body.detail);
  }
  if (typeof body === "string" && body) {
    return new ApiError(res.status, body);
  }
  return new ApiError(res.status, `request failed with status ${res.status}`);
}

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

export interface MultipartFile {
  name: string;
  filename: string;
  contentType: string;
  text: string;
}

/**
 * Assemble a multipart/form-data body. The boundary embeds enough
 * randomness that collision with the payload is not a practical concern.
 */
export function encodeMultipart(
  fields: Record<string, string>,
  file: MultipartFile,
): { body: Uint8Array; contentType: string } {
  const boundary = `----aucpower${Math.random().toString(36).slice(2)}${Date.now().toString(36)}`;
  const lines: string[] = [];
  for (const [name, value] of Object.entries(fields)) {
    lines.push(`--${boundary}`);
    lines.push(`Content-Disposition: form-data; name="${name}"`);
    lines.push("");
    lines.push(value);
  }
  lines.push(`--${boundary}`);
  lines.push(
    `Content-Disposition: form-data; name="${file.name}"; filename="${quoteFilename(file.filename)}"`,
  );
  lines.push(`Content-Type: ${file.contentType}`);
  lines.push("");
  lines.push(file.text);
  lines.push(`--${boundary}--`);
  lines.push("");
  const body = new TextEncoder().encode(lines.join("\r\n"));
  return { body, contentType: `multipart/form-data; boundary=${boundary}` };
}

function quoteFilename(filename: string): string {
  return filename.replace(/[\r\n"]/g, "_");
}
