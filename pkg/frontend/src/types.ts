/** Wire types of the regspec service API. The workbench performs no
 * validation logic of its own: every verdict shown comes from one of
 * these response shapes. */

export type ElementKind = 'atomic' | 'or' | 'and' | 'keys' | 'coll-of';

export interface CnlElementJson {
  name: string;
  kind: ElementKind;
  children: string[];
  'is-root': boolean;
  'source-text': string | null;
  line: number;
}

export interface CnlDocumentJson {
  namespace: string | null;
  root: string | null;
  elements: CnlElementJson[];
}

export interface SyntaxErrorJson {
  line: number;
  expected: string;
}

export type ParseResponse =
  | { document: CnlDocumentJson; 'syntax-error'?: undefined }
  | { 'syntax-error': SyntaxErrorJson; document?: undefined };

export interface FindingJson {
  kind:
    | 'MissingSpec'
    | 'CombinatorMismatch'
    | 'ChildrenMismatch'
    | 'RootMismatch'
    | 'UnreachableElement';
  severity: 'error' | 'warning' | 'info';
  name: string | null;
  message: string;
}

export type CheckResponse =
  | { findings: FindingJson[]; 'syntax-error'?: undefined }
  | { 'syntax-error': SyntaxErrorJson; findings?: undefined };

export interface ProblemJson {
  in: (string | number)[];
  via: string[];
  pred: string;
  val: unknown;
}

export interface TracebackEntryJson {
  problem: ProblemJson;
  element: string | null;
  line: number | null;
  sentence: string;
  'source-text': string | null;
  'below-cnl-granularity': boolean;
}

export interface ExplainResponse {
  valid: boolean;
  problems: ProblemJson[];
  traceback: TracebackEntryJson[];
}

export interface ValidateResponse {
  valid: boolean;
}

export interface GenerateResponse {
  messages: unknown[];
}

export interface RulesetResponse {
  specs: Record<string, unknown>;
  root: string;
  namespace: string | null;
  'cnl-text': string;
}
