/** The workbench: CNL editor, structure view, validate and generate panels.
 *
 * Thin client by contract: every verdict, problem, finding and sentence
 * shown here is taken verbatim from a service response and kept in
 * `state` so tests can compare the display against direct API calls.
 * The browser never re-implements validation.
 */

import { ApiClient, isAbort } from './api.js';
import {
  Diagnostic,
  findingDiagnostics,
  syntaxDiagnostics,
  tracebackDiagnostics,
} from './diagnostics.js';
import { TreeNode, buildTree, pathsToNames } from './tree.js';
import type {
  CnlDocumentJson,
  ExplainResponse,
  TracebackEntryJson,
} from './types.js';

export interface WorkbenchState {
  rulesetId: string | null;
  specNames: string[];
  root: string | null;
  cnlText: string;
  document: CnlDocumentJson | null;
  diagnostics: Diagnostic[];
  tree: TreeNode[];
  highlightedElements: Set<string>;
  highlightedPath: Set<string>;
  lastVerdict: boolean | null;
  lastExplain: ExplainResponse | null;
  generated: unknown[];
  status: string;
}

const INITIAL: WorkbenchState = {
  rulesetId: null,
  specNames: [],
  root: null,
  cnlText: '',
  document: null,
  diagnostics: [],
  tree: [],
  highlightedElements: new Set(),
  highlightedPath: new Set(),
  lastVerdict: null,
  lastExplain: null,
  generated: [],
  status: 'no ruleset loaded',
};

export class Workbench {
  state: WorkbenchState = { ...INITIAL };

  /** The view layer subscribes by assigning this. */
  onRender: (state: WorkbenchState) => void = () => {};

  constructor(private api: ApiClient) {}

  private render() {
    this.onRender(this.state);
  }

  async loadRuleset(id: string): Promise<void> {
    const ruleset = await this.api.getRuleset(id);
    this.state = {
      ...INITIAL,
      rulesetId: id,
      specNames: Object.keys(ruleset.specs).sort(),
      root: ruleset.root,
      cnlText: ruleset['cnl-text'],
      status: `ruleset ${id} loaded`,
    };
    this.render();
    await this.cnlChanged(ruleset['cnl-text']);
  }

  /** Re-parse and re-check the CNL buffer; stale responses are aborted. */
  async cnlChanged(text: string): Promise<void> {
    this.state = { ...this.state, cnlText: text };
    if (!text.trim()) {
      this.state = { ...this.state, document: null, diagnostics: [], tree: [] };
      this.render();
      return;
    }
    try {
      const parsed = await this.api.parseCnl(text);
      const doc = parsed.document ?? null;
      let diagnostics = syntaxDiagnostics(parsed);
      // an unparseable buffer cannot be soundness-checked; don't repeat
      // the syntax error through the check endpoint
      if (this.state.rulesetId && doc) {
        const checked = await this.api.checkCnl(text, this.state.rulesetId);
        diagnostics = diagnostics.concat(findingDiagnostics(checked, doc));
      }
      this.state = {
        ...this.state,
        document: doc,
        diagnostics,
        tree: doc ? buildTree(doc) : [],
      };
      this.render();
    } catch (error) {
      if (isAbort(error)) return; // superseded by a newer edit
      this.state = { ...this.state, status: String(error) };
      this.render();
    }
  }

  /** Validate + explain a message against a spec; highlight the traceback. */
  async validateMessage(spec: string, message: unknown): Promise<void> {
    if (!this.state.rulesetId) return;
    try {
      const verdict = await this.api.validate(this.state.rulesetId, spec, message);
      const explained = await this.api.explain(this.state.rulesetId, spec, message);
      const elements = new Set<string>();
      for (const entry of explained.traceback) {
        if (entry.element) elements.add(entry.element);
      }
      this.state = {
        ...this.state,
        lastVerdict: verdict.valid,
        lastExplain: explained,
        highlightedElements: elements,
        highlightedPath: pathsToNames(this.state.tree, elements),
        diagnostics: this.state.diagnostics
          .filter((d) => d.level !== 'highlight')
          .concat(tracebackDiagnostics(explained.traceback)),
        status: verdict.valid ? 'message is valid' : 'message is invalid',
      };
      this.render();
    } catch (error) {
      if (isAbort(error)) return;
      this.state = { ...this.state, status: String(error) };
      this.render();
    }
  }

  async generateMessages(spec: string, count: number, seed: number): Promise<void> {
    if (!this.state.rulesetId) return;
    try {
      const response = await this.api.generate(this.state.rulesetId, spec, count, seed);
      this.state = {
        ...this.state,
        generated: response.messages,
        status: `generated ${response.messages.length} messages (seed ${seed})`,
      };
      this.render();
    } catch (error) {
      if (isAbort(error)) return;
      this.state = { ...this.state, status: String(error) };
      this.render();
    }
  }

  /** The elements on the highlighted path, with quotes, for the side panel. */
  failingElements(): { name: string; sourceText: string | null; sentence: string | null }[] {
    const doc = this.state.document;
    if (!doc || this.state.highlightedPath.size === 0) return [];
    const sentences = new Map<string, string>();
    for (const entry of this.state.lastExplain?.traceback ?? []) {
      if (entry.element) sentences.set(entry.element, entry.sentence);
    }
    return doc.elements
      .filter((el) => this.state.highlightedPath.has(el.name))
      .map((el) => ({
        name: el.name,
        sourceText: el['source-text'],
        sentence: sentences.get(el.name) ?? null,
      }));
  }
}

// --- traceback presentation helpers -------------------------------------------

export function describeEntry(entry: TracebackEntryJson): string {
  const path = entry.problem.in.length ? ` at ${entry.problem.in.join('/')}` : '';
  return `${entry.sentence}${path}: ${entry.problem.pred}`;
}
