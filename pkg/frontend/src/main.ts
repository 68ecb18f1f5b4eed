/** Entry point: connect to the service, load the ruleset list, mount. */

import { ApiClient } from './api.js';
import { mountWorkbench } from './view.js';
import { Workbench } from './workbench.js';

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get('api') ?? 'http://127.0.0.1:8080';

const api = new ApiClient(baseUrl);
const bench = new Workbench(api);

const root = document.getElementById('app');
if (!root) throw new Error('missing #app element');
mountWorkbench(root, bench);

const picker = document.getElementById('ruleset-picker') as HTMLSelectElement;

async function boot(): Promise<void> {
  const { rulesets } = await api.listRulesets();
  picker.textContent = '';
  for (const id of rulesets) {
    const option = document.createElement('option');
    option.value = id;
    option.textContent = id;
    picker.append(option);
  }
  picker.addEventListener('change', () => void bench.loadRuleset(picker.value));
  if (rulesets.length > 0) await bench.loadRuleset(rulesets[0]!);
}

boot().catch((error) => {
  const status = document.querySelector('.status');
  if (status) status.textContent = `cannot reach service at ${baseUrl}: ${error}`;
});
