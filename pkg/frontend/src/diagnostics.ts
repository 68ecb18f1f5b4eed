/** Per-line editor diagnostics derived from service responses.
 *
 * The editor shows three layers on the same gutter: a syntax error (one
 * line), soundness findings (anchored to the line of the element they
 * name), and problem highlights from the validate panel's traceback.
 */

import type {
  CheckResponse,
  CnlDocumentJson,
  FindingJson,
  ParseResponse,
  TracebackEntryJson,
} from './types.js';

export type DiagnosticLevel = 'error' | 'warning' | 'info' | 'highlight';

export interface Diagnostic {
  line: number;
  level: DiagnosticLevel;
  message: string;
}

export function elementLines(doc: CnlDocumentJson): Map<string, number> {
  const lines = new Map<string, number>();
  for (const el of doc.elements) lines.set(el.name, el.line);
  return lines;
}

export function syntaxDiagnostics(parsed: ParseResponse): Diagnostic[] {
  const syntaxError = parsed['syntax-error'];
  if (!syntaxError) return [];
  return [
    {
      line: syntaxError.line,
      level: 'error',
      message: `expected ${syntaxError.expected}`,
    },
  ];
}

export function findingDiagnostics(
  checked: CheckResponse,
  doc: CnlDocumentJson | null,
): Diagnostic[] {
  const syntaxError = checked['syntax-error'];
  if (syntaxError) {
    return [
      { line: syntaxError.line, level: 'error', message: `expected ${syntaxError.expected}` },
    ];
  }
  const lines = doc ? elementLines(doc) : new Map<string, number>();
  return (checked.findings ?? []).map((finding: FindingJson) => ({
    line: (finding.name && lines.get(finding.name)) || 0,
    level: finding.severity === 'info' ? 'info' : finding.severity,
    message: finding.message,
  }));
}

/** Traceback entries -> highlight diagnostics at the named elements' lines. */
export function tracebackDiagnostics(entries: TracebackEntryJson[]): Diagnostic[] {
  const out: Diagnostic[] = [];
  for (const entry of entries) {
    if (entry.line === null || entry.element === null) continue;
    const where = entry['below-cnl-granularity'] ? ' (below CNL granularity)' : '';
    out.push({
      line: entry.line,
      level: 'highlight',
      message: `${entry.problem.pred}${where}`,
    });
  }
  return out;
}

/** Group diagnostics by line for gutter rendering; 0 = whole document. */
export function byLine(diagnostics: Diagnostic[]): Map<number, Diagnostic[]> {
  const grouped = new Map<number, Diagnostic[]>();
  for (const d of diagnostics) {
    const bucket = grouped.get(d.line);
    if (bucket) bucket.push(d);
    else grouped.set(d.line, [d]);
  }
  return grouped;
}
