/**
 * Typed client for the living-review HTTP API.
 *
 * Every value rendered by the viewer comes verbatim from these responses;
 * the client never recomputes display or tooltip strings.
 */

export interface BlockJson {
  id: string;
  text: string;
}

export interface SectionJson {
  heading: string;
  blocks: BlockJson[];
}

export interface ReviewInfo {
  id: string;
  title: string;
  review: string;
  publication_version: string;
  versions: string[];
  current_version: string;
  modes: string[];
  sections: SectionJson[];
}

export interface ResolvedFragment {
  id: string;
  kind: string;
  block: string;
  start: number;
  end: number;
  display_value: string;
  tooltip_value: string | null;
  highlighted: boolean;
}

export interface ResolvedView {
  review: string;
  version: string;
  mode: string;
  fragments: ResolvedFragment[];
}

export interface SupportEntry {
  statement: string;
  supporting_papers: number;
  distinct_authors: number;
}

export interface SupportReport extends SupportEntry {
  conflicting: SupportEntry[];
}

export interface MetricValue {
  fragment: string;
  value: string;
}

export interface UpdateResponse {
  nanopubs: string[];
  index: string;
  version: string;
}

export interface UpdateBody {
  template: string;
  payload: Record<string, unknown>;
  submitter?: string;
  timestamp?: string;
}

export class ApiError extends Error {
  status: number;
  violations: string[];

  constructor(status: number, message: string, violations: string[] = []) {
    super(message);
    this.status = status;
    this.violations = violations;
  }
}

async function readJson(response: Response): Promise<Record<string, unknown>> {
  try {
    return (await response.json()) as Record<string, unknown>;
  } catch {
    return {};
  }
}

export class Client {
  base: string;
  token: string;

  constructor(base: string, token = "") {
    this.base = base.replace(/\/$/, "");
    this.token = token;
  }

  private async get<T>(path: string): Promise<T> {
    const response = await fetch(this.base + path);
    if (!response.ok) {
      const body = await readJson(response);
      throw new ApiError(response.status, String(body.error ?? response.statusText));
    }
    return (await response.json()) as T;
  }

  getReview(id: string): Promise<ReviewInfo> {
    return this.get(`/reviews/${encodeURIComponent(id)}`);
  }

  getView(id: string, version: string, mode: string): Promise<ResolvedView> {
    const query = new URLSearchParams({ version, mode });
    return this.get(`/reviews/${encodeURIComponent(id)}/view?${query}`);
  }

  getSupport(id: string, statement: string): Promise<SupportReport> {
    return this.get(
      `/reviews/${encodeURIComponent(id)}/statements/${encodeURIComponent(statement)}/support`,
    );
  }

  getMetrics(id: string): Promise<{ version: string; metrics: MetricValue[] }> {
    return this.get(`/reviews/${encodeURIComponent(id)}/metrics`);
  }

  nanopubUrl(artifactCode: string): string {
    return `${this.base}/nanopubs/${encodeURIComponent(artifactCode)}`;
  }

  async postUpdate(id: string, body: UpdateBody): Promise<UpdateResponse> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (this.token) {
      headers["Authorization"] = `Bearer ${this.token}`;
    }
    const response = await fetch(`${this.base}/reviews/${encodeURIComponent(id)}/updates`, {
      method: "POST",
      headers,
      body: JSON.stringify(body),
    });
    if (!response.ok) {
      const payload = await readJson(response);
      throw new ApiError(
        response.status,
        String(payload.error ?? response.statusText),
        (payload.violations as string[] | undefined) ?? [],
      );
    }
    return (await response.json()) as UpdateResponse;
  }
}
