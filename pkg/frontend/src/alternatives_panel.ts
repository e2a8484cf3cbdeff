import type { AlternativesDoc, BlockDoc } from './types';

export interface AlternativesHandlers {
  onEmbed(blockId: string, factId: string): void;
}

function positionLine(block: BlockDoc): string {
  const rows = block.location.row_path.join(' / ') || 'all rows';
  const cols = block.location.col_path.join(' / ') || 'all columns';
  return `${rows} × ${cols}`;
}

export class AlternativesPanel {
  readonly el: HTMLElement;
  private readonly handlers: AlternativesHandlers;

  constructor(el: HTMLElement, handlers: AlternativesHandlers) {
    this.el = el;
    this.el.classList.add('panel-alternatives');
    this.handlers = handlers;
  }

  render(block: BlockDoc | null, doc: AlternativesDoc | null): void {
    this.el.textContent = '';
    if (!block || !doc) {
      const prompt = document.createElement('p');
      prompt.className = 'empty-state';
      prompt.textContent = 'Select a block to see its facts.';
      this.el.append(prompt);
      return;
    }

    const head = document.createElement('div');
    head.className = 'alt-position';
    head.textContent = positionLine(block);
    this.el.append(head);

    const list = document.createElement('ul');
    list.className = 'alt-list';
    for (const fact of doc.facts) {
      const item = document.createElement('li');
      item.className = 'alt-fact';
      item.dataset.factId = fact.id;

      const title = document.createElement('div');
      title.className = 'alt-title';
      title.textContent = `${fact.type} · ${fact.score.toFixed(2)}`;

      const desc = document.createElement('div');
      desc.className = 'alt-desc';
      desc.textContent = fact.description;

      const button = document.createElement('button');
      button.type = 'button';
      button.className = 'alt-embed';
      if (fact.id === doc.embedded) {
        button.textContent = 'embedded';
        button.disabled = true;
      } else {
        button.textContent = 'embed';
        button.addEventListener('click', () =>
          this.handlers.onEmbed(doc.block_id, fact.id),
        );
      }

      item.append(title, desc, button);
      list.append(item);
    }
    this.el.append(list);
  }
}
