/** The structure view model: the CNL document as a tree, root at the top.
 *
 * Compounds expand to their children; atomic elements are leaves carrying
 * their source quote. An element reused by several parents appears under
 * each (the document graph is a DAG; the view is its unfolding). Elements
 * unreachable from the root are listed as extra top-level nodes so
 * nothing silently disappears.
 */

import type { CnlDocumentJson, CnlElementJson, ElementKind } from './types.js';

export interface TreeNode {
  name: string;
  kind: ElementKind | 'external';
  sourceText: string | null;
  line: number | null;
  children: TreeNode[];
}

export function buildTree(doc: CnlDocumentJson): TreeNode[] {
  const byName = new Map<string, CnlElementJson>();
  for (const el of doc.elements) byName.set(el.name, el);

  const build = (name: string, trail: Set<string>): TreeNode => {
    const el = byName.get(name);
    if (!el) {
      return { name, kind: 'external', sourceText: null, line: null, children: [] };
    }
    // a cycle cannot parse, but guard the unfolding anyway
    if (trail.has(name)) {
      return { name, kind: el.kind, sourceText: el['source-text'], line: el.line, children: [] };
    }
    const nextTrail = new Set(trail).add(name);
    return {
      name,
      kind: el.kind,
      sourceText: el['source-text'],
      line: el.line,
      children: el.children.map((child) => build(child, nextTrail)),
    };
  };

  const roots: TreeNode[] = [];
  if (doc.root && byName.has(doc.root)) {
    roots.push(build(doc.root, new Set()));
  }
  const reachable = new Set<string>();
  const collect = (node: TreeNode) => {
    reachable.add(node.name);
    node.children.forEach(collect);
  };
  roots.forEach(collect);
  for (const el of doc.elements) {
    if (!reachable.has(el.name)) {
      roots.push(build(el.name, new Set()));
      collect(roots[roots.length - 1]!);
    }
  }
  return roots;
}

/** Names on the path from any root down to every occurrence of targets. */
export function pathsToNames(roots: TreeNode[], targets: Set<string>): Set<string> {
  const onPath = new Set<string>();
  const walk = (node: TreeNode): boolean => {
    const hitBelow = node.children.map(walk).some(Boolean);
    const hit = targets.has(node.name) || hitBelow;
    if (hit) onPath.add(node.name);
    return hit;
  };
  roots.forEach(walk);
  return onPath;
}
