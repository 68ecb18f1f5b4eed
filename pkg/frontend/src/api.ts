/** Thin typed client for the regspec service.
 *
 * Each family of calls owns an AbortController slot: re-issuing a call
 * from the same slot cancels the one in flight, so a stale response can
 * never overwrite a newer one (latest wins).
 */

import type {
  CheckResponse,
  ExplainResponse,
  GenerateResponse,
  ParseResponse,
  RulesetResponse,
  ValidateResponse,
} from './types.js';

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  private controllers = new Map<string, AbortController>();

  constructor(private baseUrl: string = '') {}

  /** Abort whatever request currently occupies the slot and claim it. */
  private claim(slot: string): AbortSignal {
    this.controllers.get(slot)?.abort();
    const controller = new AbortController();
    this.controllers.set(slot, controller);
    return controller.signal;
  }

  private async post<T>(path: string, body: unknown, slot: string): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
      signal: this.claim(slot),
    });
    return this.unwrap<T>(response);
  }

  private async unwrap<T>(response: Response): Promise<T> {
    if (!response.ok) {
      let detail = `HTTP ${response.status}`;
      try {
        const body = (await response.json()) as { error?: string };
        if (body.error) detail = body.error;
      } catch {
        // non-JSON error body: keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  listRulesets(): Promise<{ rulesets: string[] }> {
    return fetch(this.baseUrl + '/api/rulesets').then((r) => this.unwrap(r));
  }

  getRuleset(id: string): Promise<RulesetResponse> {
    return fetch(this.baseUrl + `/api/ruleset/${encodeURIComponent(id)}`).then((r) =>
      this.unwrap(r),
    );
  }

  parseCnl(cnlText: string): Promise<ParseResponse> {
    return this.post('/api/cnl/parse', { 'cnl-text': cnlText }, 'cnl');
  }

  checkCnl(cnlText: string, rulesetId: string): Promise<CheckResponse> {
    return this.post(
      '/api/cnl/check',
      { 'cnl-text': cnlText, 'ruleset-id': rulesetId },
      'check',
    );
  }

  validate(rulesetId: string, spec: string, message: unknown): Promise<ValidateResponse> {
    return this.post(
      '/api/validate',
      { 'ruleset-id': rulesetId, spec, message },
      'validate',
    );
  }

  explain(rulesetId: string, spec: string, message: unknown): Promise<ExplainResponse> {
    return this.post(
      '/api/explain',
      { 'ruleset-id': rulesetId, spec, message },
      'explain',
    );
  }

  generate(
    rulesetId: string,
    spec: string,
    count: number,
    seed: number,
  ): Promise<GenerateResponse> {
    return this.post(
      '/api/generate',
      { 'ruleset-id': rulesetId, spec, count, seed },
      'generate',
    );
  }
}

/** True for the AbortError a cancelled fetch rejects with. */
export function isAbort(error: unknown): boolean {
  return error instanceof DOMException && error.name === 'AbortError';
}
