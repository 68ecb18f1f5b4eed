/** DOM rendering for the workbench. All content goes through textContent
 * (never innerHTML), so service data cannot inject markup. */

import { Diagnostic, byLine } from './diagnostics.js';
import { TreeNode } from './tree.js';
import { Workbench, WorkbenchState, describeEntry } from './workbench.js';

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function mountWorkbench(rootEl: HTMLElement, bench: Workbench): void {
  rootEl.textContent = '';

  const header = el('header');
  const title = el('h1', 'title', 'regspec workbench');
  const status = el('span', 'status');
  const rulesetPicker = el('select', 'ruleset-picker');
  rulesetPicker.id = 'ruleset-picker';
  header.append(title, rulesetPicker, status);

  // --- editor pane ---------------------------------------------------------
  const editorPane = el('section', 'pane editor-pane');
  editorPane.append(el('h2', undefined, 'CNL'));
  const editor = el('textarea', 'cnl-editor');
  editor.id = 'cnl-editor';
  editor.spellcheck = false;
  const gutter = el('div', 'diagnostics');
  gutter.id = 'cnl-diagnostics';
  editorPane.append(editor, gutter);

  // --- structure pane ------------------------------------------------------
  const treePane = el('section', 'pane tree-pane');
  treePane.append(el('h2', undefined, 'Structure'));
  const treeRoot = el('div', 'tree');
  treeRoot.id = 'structure-tree';
  treePane.append(treeRoot);

  // --- validate pane -------------------------------------------------------
  const validatePane = el('section', 'pane validate-pane');
  validatePane.append(el('h2', undefined, 'Validate'));
  const specPicker = el('select', 'spec-picker');
  specPicker.id = 'spec-picker';
  const messageBox = el('textarea', 'message-box');
  messageBox.id = 'message-box';
  messageBox.placeholder = 'paste a JSON message';
  const messageFile = el('input');
  messageFile.type = 'file';
  messageFile.id = 'message-file';
  messageFile.accept = '.json,application/json';
  const runButton = el('button', undefined, 'Validate');
  runButton.id = 'run-validate';
  const verdict = el('div', 'verdict');
  verdict.id = 'verdict';
  const problems = el('ul', 'problems');
  problems.id = 'problems';
  const failing = el('div', 'failing');
  failing.id = 'failing-elements';
  validatePane.append(specPicker, messageBox, messageFile, runButton, verdict, problems, failing);

  // --- generate pane -------------------------------------------------------
  const generatePane = el('section', 'pane generate-pane');
  generatePane.append(el('h2', undefined, 'Generate'));
  const genSpec = el('select', 'spec-picker');
  genSpec.id = 'generate-spec';
  const seedInput = el('input');
  seedInput.type = 'number';
  seedInput.id = 'generate-seed';
  seedInput.value = '0';
  const countInput = el('input');
  countInput.type = 'number';
  countInput.id = 'generate-count';
  countInput.value = '5';
  const genButton = el('button', undefined, 'Generate');
  genButton.id = 'run-generate';
  const generated = el('ul', 'generated');
  generated.id = 'generated-messages';
  generatePane.append(
    genSpec,
    el('label', undefined, 'seed'),
    seedInput,
    el('label', undefined, 'count'),
    countInput,
    genButton,
    generated,
  );

  rootEl.append(header, editorPane, treePane, validatePane, generatePane);

  // --- wiring ----------------------------------------------------------------
  let editTimer: ReturnType<typeof setTimeout> | undefined;
  editor.addEventListener('input', () => {
    clearTimeout(editTimer);
    editTimer = setTimeout(() => void bench.cnlChanged(editor.value), 250);
  });

  runButton.addEventListener('click', () => {
    let message: unknown;
    try {
      message = JSON.parse(messageBox.value);
    } catch {
      verdict.textContent = 'message box does not contain JSON';
      verdict.className = 'verdict error';
      return;
    }
    void bench.validateMessage(specPicker.value, message);
  });

  messageFile.addEventListener('change', () => {
    const file = messageFile.files?.[0];
    if (!file) return;
    void file.text().then((text) => {
      messageBox.value = text;
    });
  });

  genButton.addEventListener('click', () => {
    void bench.generateMessages(
      genSpec.value,
      Number(countInput.value) || 1,
      Number(seedInput.value) || 0,
    );
  });

  generated.addEventListener('click', (event) => {
    const item = (event.target as HTMLElement).closest('li[data-message]');
    if (!item) return;
    messageBox.value = item.getAttribute('data-message') ?? '';
  });

  bench.onRender = renderAll;
  renderAll(bench.state);

  function renderAll(state: WorkbenchState): void {
    status.textContent = state.status;
    if (editor.value !== state.cnlText && document.activeElement !== editor) {
      editor.value = state.cnlText;
    }
    renderDiagnostics(gutter, state.diagnostics);
    renderTree(treeRoot, state.tree, state.highlightedPath, state.highlightedElements);
    renderSpecOptions(specPicker, state.specNames, state.root);
    renderSpecOptions(genSpec, state.specNames, state.root);
    renderVerdict(verdict, state);
    renderProblems(problems, state);
    renderFailing(failing, bench);
    renderGenerated(generated, state.generated);
  }
}

function renderDiagnostics(target: HTMLElement, diagnostics: Diagnostic[]): void {
  target.textContent = '';
  const grouped = byLine(diagnostics);
  for (const line of [...grouped.keys()].sort((a, b) => a - b)) {
    for (const d of grouped.get(line) ?? []) {
      const row = el('div', `diagnostic ${d.level}`);
      row.setAttribute('data-line', String(d.line));
      row.append(
        el('span', 'line', d.line > 0 ? `line ${d.line}` : 'document'),
        el('span', 'message', d.message),
      );
      target.append(row);
    }
  }
}

function renderTree(
  target: HTMLElement,
  roots: TreeNode[],
  highlightedPath: Set<string>,
  highlighted: Set<string>,
): void {
  target.textContent = '';
  const renderNode = (node: TreeNode): HTMLElement => {
    const container = el('div', 'node');
    const classes = ['label', `kind-${node.kind}`];
    if (highlightedPath.has(node.name)) classes.push('on-path');
    if (highlighted.has(node.name)) classes.push('failing');
    const label = el('span', classes.join(' '), `${node.name} [${node.kind}]`);
    label.setAttribute('data-element', node.name);
    if (node.sourceText) label.title = node.sourceText;
    container.append(label);
    if (node.children.length > 0) {
      const details = document.createElement('details');
      details.open = true;
      const summary = document.createElement('summary');
      summary.append(label);
      details.append(summary);
      const children = el('div', 'children');
      for (const child of node.children) children.append(renderNode(child));
      details.append(children);
      container.textContent = '';
      container.append(details);
    }
    return container;
  };
  for (const root of roots) target.append(renderNode(root));
}

function renderSpecOptions(picker: HTMLSelectElement, names: string[], root: string | null): void {
  const previous = picker.value;
  picker.textContent = '';
  for (const name of names) {
    const option = document.createElement('option');
    option.value = name;
    option.textContent = name;
    picker.append(option);
  }
  if (previous && names.includes(previous)) picker.value = previous;
  else if (root) picker.value = root;
}

function renderVerdict(target: HTMLElement, state: WorkbenchState): void {
  if (state.lastVerdict === null) {
    target.textContent = '';
    target.className = 'verdict';
    return;
  }
  target.textContent = state.lastVerdict ? 'valid' : 'invalid';
  target.className = `verdict ${state.lastVerdict ? 'ok' : 'bad'}`;
}

function renderProblems(target: HTMLElement, state: WorkbenchState): void {
  target.textContent = '';
  for (const entry of state.lastExplain?.traceback ?? []) {
    target.append(el('li', 'problem', describeEntry(entry)));
  }
}

function renderFailing(target: HTMLElement, bench: Workbench): void {
  target.textContent = '';
  const items = bench.failingElements();
  if (items.length === 0) return;
  target.append(el('h3', undefined, 'Failing contracts'));
  for (const item of items) {
    const row = el('div', 'failing-element');
    row.setAttribute('data-element', item.name);
    row.append(el('div', 'name', item.name));
    if (item.sentence) row.append(el('div', 'sentence', item.sentence));
    if (item.sourceText) row.append(el('blockquote', 'source', item.sourceText));
    target.append(row);
  }
}

function renderGenerated(target: HTMLElement, messages: unknown[]): void {
  target.textContent = '';
  messages.forEach((message, index) => {
    const text = JSON.stringify(message);
    const item = el('li', 'generated-message');
    item.setAttribute('data-message', text);
    item.append(
      el('span', 'index', `#${index}`),
      el('code', undefined, text.length > 120 ? text.slice(0, 117) + '...' : text),
    );
    target.append(item);
  });
}
