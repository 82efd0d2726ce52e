/** Typed HTTP client for the diagram session service.
 *
 * Every response is validated against a zod schema before it reaches the
 * UI, so a drifting service contract fails loudly here rather than as a
 * rendering glitch.  The client does no geometry: fractions stay exact
 * "p/q" strings end to end.
 */

import { z } from "zod";

export const fracString = z.string().regex(/^-?\d+(\/[1-9]\d*)?$/);
export const intVec = z.tuple([z.number().int(), z.number().int()]);
export const fracPoint = z.tuple([fracString, fracString]);

export const cutSchema = z.object({
  base: fracPoint,
  direction: intVec,
  nodes: z.array(fracString).min(1),
});

export const boundarySchema = z.object({
  vertices: z.array(fracPoint).min(1),
  marks: z.array(z.enum(["true", "smoothed"])),
  ray_in: intVec.nullish(),
  ray_out: intVec.nullish(),
});

export const moveRecordSchema = z
  .object({ move: z.string() })
  .catchall(z.unknown());

export const diagramSchema = z.object({
  boundary: boundarySchema,
  cuts: z.array(cutSchema),
  log: z.array(moveRecordSchema),
});

export const tDataSchema = z.object({
  d: z.number().int().positive(),
  p: z.number().int().positive(),
  q: z.number().int().positive(),
});

export const vertexInfoSchema = z.object({
  index: z.number().int().nonnegative(),
  point: fracPoint,
  mark: z.enum(["true", "smoothed"]),
  type: intVec,
  t: tDataSchema.nullable(),
  label: z.string(),
});

export const sessionSchema = z.object({
  id: z.string().regex(/^[0-9a-f]{32}$/),
  diagram: diagramSchema,
  vertices: z.array(vertexInfoSchema),
  bounded: z.boolean(),
  area2: fracString.nullable(),
  moves: z.number().int().nonnegative(),
});

export const singularitySchema = z.object({
  n: z.number().int().positive(),
  a: z.number().int().nonnegative(),
  label: z.string(),
  hj: z.array(z.number().int()),
  discrepancies: z.array(fracString),
  alphas: z.array(fracString),
  class: z.string(),
  t: tDataSchema.nullable(),
  milnor: z
    .object({
      h1_order: z.number().int().positive(),
      h2_rank: z.number().int().nonnegative(),
      rational_ball: z.boolean(),
    })
    .nullable(),
});

export const presolutionsSchema = z.object({
  n: z.number().int().positive(),
  a: z.number().int().nonnegative(),
  count: z.number().int().nonnegative(),
  items: z.array(
    z.object({
      kept: z.array(intVec),
      vertex_types: z.array(intVec),
      k_degrees: z.array(fracString),
    }),
  ),
});

export type DiagramJson = z.infer<typeof diagramSchema>;
export type VertexInfo = z.infer<typeof vertexInfoSchema>;
export type SessionState = z.infer<typeof sessionSchema>;
export type SingularityInfo = z.infer<typeof singularitySchema>;
export type PresolutionList = z.infer<typeof presolutionsSchema>;

/** A move request; the service validates and either applies it or rejects
 * it atomically. */
export type Move = { move: string } & Record<string, unknown>;

export type Template =
  | { kind: "wedge"; n: number; a: number }
  | {
      kind: "pi-minus";
      n?: number;
      a?: number;
      c_len?: string;
      height?: string | null;
    };

/** Structured service error: HTTP status plus the machine-readable code
 * from the response body, surfaced verbatim. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

const errorBodySchema = z.object({ code: z.string(), message: z.string() });

export class Client {
  constructor(readonly baseUrl: string) {}

  private async request(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<unknown> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const res = await fetch(this.baseUrl + path, init);
    if (!res.ok) {
      let code = "unknown";
      let message = `HTTP ${res.status}`;
      try {
        const parsed = errorBodySchema.parse(await res.json());
        code = parsed.code;
        message = parsed.message;
      } catch {
        /* non-JSON error body: keep the fallback */
      }
      throw new ApiError(res.status, code, message);
    }
    return res.json();
  }

  async healthz(): Promise<boolean> {
    try {
      const body = (await this.request("GET", "/healthz")) as { ok?: boolean };
      return body.ok === true;
    } catch {
      return false;
    }
  }

  async createFromTemplate(template: Template): Promise<SessionState> {
    return sessionSchema.parse(
      await this.request("POST", "/diagram", { template }),
    );
  }

  async createFromDiagram(diagram: DiagramJson): Promise<SessionState> {
    return sessionSchema.parse(
      await this.request("POST", "/diagram", { diagram }),
    );
  }

  async getSession(id: string): Promise<SessionState> {
    return sessionSchema.parse(await this.request("GET", `/diagram/${id}`));
  }

  async deleteSession(id: string): Promise<void> {
    await this.request("DELETE", `/diagram/${id}`);
  }

  async applyMove(id: string, move: Move): Promise<SessionState> {
    return sessionSchema.parse(
      await this.request("POST", `/diagram/${id}/apply`, move),
    );
  }

  async undo(id: string): Promise<SessionState> {
    return sessionSchema.parse(
      await this.request("POST", `/diagram/${id}/undo`, {}),
    );
  }

  async renderSvg(
    id: string,
    options: {
      width?: number;
      height?: number;
      window?: string;
      labels?: boolean;
    } = {},
  ): Promise<string> {
    const params = new URLSearchParams();
    if (options.width !== undefined) params.set("width", String(options.width));
    if (options.height !== undefined)
      params.set("height", String(options.height));
    if (options.window !== undefined) params.set("window", options.window);
    if (options.labels !== undefined)
      params.set("labels", options.labels ? "1" : "0");
    const qs = params.toString();
    const res = await fetch(
      `${this.baseUrl}/diagram/${id}/render.svg${qs ? `?${qs}` : ""}`,
    );
    if (!res.ok) {
      let code = "unknown";
      let message = `HTTP ${res.status}`;
      try {
        const parsed = errorBodySchema.parse(await res.json());
        code = parsed.code;
        message = parsed.message;
      } catch {
        /* keep fallback */
      }
      throw new ApiError(res.status, code, message);
    }
    return res.text();
  }

  async singularity(n: number, a: number): Promise<SingularityInfo> {
    return singularitySchema.parse(
      await this.request("GET", `/singularity/${n}/${a}`),
    );
  }

  async presolutions(n: number, a: number): Promise<PresolutionList> {
    return presolutionsSchema.parse(
      await this.request("POST", "/presolutions", { n, a }),
    );
  }
}
