/** DOM mounting: render trees to elements, the question pop-up, and the
 * model (MENU) dialog. */

import { QUESTION_LABELS } from "./model.js";
import { RenderNode, ResponseView } from "./rendertree.js";
import { Controller } from "./state.js";

function closeMenus(): void {
  document.querySelectorAll(".question-menu").forEach((m) => m.remove());
}

function openQuestionMenu(
  anchor: HTMLElement,
  questions: string[],
  onPick: (question: string) => void,
): void {
  closeMenus();
  const menu = document.createElement("div");
  menu.className = "question-menu";
  menu.setAttribute("role", "menu");
  for (const q of questions) {
    const item = document.createElement("button");
    item.className = "question-menu-item";
    item.textContent = QUESTION_LABELS[q] ?? q;
    item.onclick = () => {
      closeMenus();
      onPick(q);
    };
    menu.appendChild(item);
  }
  anchor.appendChild(menu);
}

function mountNode(node: RenderNode, controller: Controller, questions: string[]): Node {
  switch (node.kind) {
    case "text":
      return document.createTextNode(node.text);
    case "entity-link": {
      const link = document.createElement("a");
      link.className = "entity";
      link.href = "#";
      link.textContent = node.text;
      link.onclick = (ev) => {
        ev.preventDefault();
        openQuestionMenu(link.parentElement ?? link, questions, (question) => {
          void controller.issue({ question, component: node.target });
        });
      };
      return link;
    }
    case "action-link": {
      const link = document.createElement("a");
      link.className = "action";
      link.href = "#";
      link.textContent = node.text;
      link.onclick = (ev) => {
        ev.preventDefault();
        void controller.issue({
          question: "HowDoIPerform",
          component: node.target,
          action: node.action,
        });
      };
      return link;
    }
    case "error-chip": {
      const chip = document.createElement("span");
      chip.className = "error-chip";
      chip.textContent = node.message;
      return chip;
    }
    case "list": {
      const list = document.createElement("ul");
      for (const item of node.items) {
        const li = document.createElement("li");
        for (const child of item) li.appendChild(mountNode(child, controller, questions));
        list.appendChild(li);
      }
      return list;
    }
  }
}

export function mountResponse(
  view: ResponseView,
  controller: Controller,
  questions: string[],
  root: HTMLElement,
): void {
  root.replaceChildren();

  const title = document.createElement("h2");
  for (const node of view.title) title.appendChild(mountNode(node, controller, questions));
  root.appendChild(title);

  const body = document.createElement("div");
  body.className = "body";
  for (const node of view.body) body.appendChild(mountNode(node, controller, questions));
  root.appendChild(body);

  if (view.followups.length > 0) {
    const row = document.createElement("div");
    row.className = "followups";
    for (const followup of view.followups) {
      const button = document.createElement("button");
      button.textContent = followup.label;
      button.onclick = () => {
        void controller.issue({ question: followup.question, component: followup.component });
      };
      row.appendChild(button);
    }
    root.appendChild(row);
  }
}

export function openModelDialog(
  controller: Controller,
  expertise: string[],
  tasks: string[],
): void {
  const existing = document.querySelector("dialog.model-dialog");
  if (existing) existing.remove();

  const dialog = document.createElement("dialog");
  dialog.className = "model-dialog";

  const pick = (label: string, options: string[], selected: string) => {
    const wrap = document.createElement("label");
    wrap.textContent = label + " ";
    const select = document.createElement("select");
    for (const option of options) {
      const el = document.createElement("option");
      el.value = option;
      el.textContent = option;
      el.selected = option === selected;
      select.appendChild(el);
    }
    wrap.appendChild(select);
    dialog.appendChild(wrap);
    return select;
  };

  const expertisePick = pick("Expertise:", expertise, controller.state.expertise);
  const taskPick = pick("Task:", tasks, controller.state.task);

  const apply = document.createElement("button");
  apply.textContent = "Apply";
  apply.onclick = () => {
    dialog.close();
    dialog.remove();
    void controller.applyModelChange({
      expertise: expertisePick.value,
      task: taskPick.value,
    });
  };
  const cancel = document.createElement("button");
  cancel.textContent = "Cancel";
  cancel.onclick = () => {
    dialog.close();
    dialog.remove();
  };
  dialog.appendChild(apply);
  dialog.appendChild(cancel);
  document.body.appendChild(dialog);
  dialog.showModal();
}
