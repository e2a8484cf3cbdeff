import { FACT_TYPES } from './types';

export interface FilterHandlers {
  onFilters(types: string[]): void;
}

export class FilterPanel {
  readonly el: HTMLElement;
  private readonly handlers: FilterHandlers;

  constructor(el: HTMLElement, handlers: FilterHandlers) {
    this.el = el;
    this.el.classList.add('panel-filters');
    this.handlers = handlers;
  }

  render(enabled: string[]): void {
    this.el.textContent = '';
    const active = new Set(enabled);
    for (const type of FACT_TYPES) {
      const label = document.createElement('label');
      label.className = 'filter-toggle';
      const box = document.createElement('input');
      box.type = 'checkbox';
      box.checked = active.has(type);
      box.dataset.type = type;
      box.addEventListener('change', () => {
        const next = active.has(type)
          ? enabled.filter((t) => t !== type)
          : [...enabled, type];
        this.handlers.onFilters(next);
      });
      label.append(box, type);
      this.el.append(label);
    }
  }
}
