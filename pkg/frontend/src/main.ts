/** Application wiring: session setup, component tree, navigation bar. */

import { Client } from "./api.js";
import { ComponentNode } from "./model.js";
import { mountResponse, openModelDialog } from "./dom.js";
import { renderResponse } from "./rendertree.js";
import { Controller } from "./state.js";

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

function mountTree(
  nodes: ComponentNode[],
  controller: Controller,
  container: HTMLElement,
): void {
  const list = document.createElement("ul");
  for (const node of nodes) {
    const item = document.createElement("li");
    const link = document.createElement("a");
    link.href = "#";
    link.textContent = node.name;
    link.onclick = (ev) => {
      ev.preventDefault();
      void controller.issue({ question: "WhatIsIt", component: node.id });
    };
    item.appendChild(link);
    if (node.children.length > 0) mountTree(node.children, controller, item);
    list.appendChild(item);
  }
  container.appendChild(list);
}

async function boot(): Promise<void> {
  const base = (el<HTMLInputElement>("api-base").value || "").replace(/\/$/, "");
  const client = new Client(base);
  const status = el<HTMLElement>("status");

  try {
    const [models, questions, components] = await Promise.all([
      client.models(),
      client.questions(),
      client.components(),
    ]);
    const expertise = models.expertise[0];
    const task = models.tasks.includes("operations") ? "operations" : models.tasks[0];
    const controller = await Controller.start(client, expertise, task);

    const tree = el<HTMLElement>("tree");
    tree.replaceChildren();
    mountTree(components.roots, controller, tree);

    const response = el<HTMLElement>("response");
    const backButton = el<HTMLButtonElement>("back");
    const forwardButton = el<HTMLButtonElement>("forward");
    const menuButton = el<HTMLButtonElement>("menu");

    backButton.onclick = () => void controller.back();
    forwardButton.onclick = () => void controller.forward();
    menuButton.onclick = () => openModelDialog(controller, models.expertise, models.tasks);

    controller.onChange(() => {
      backButton.disabled = controller.busy || !controller.canGoBack;
      forwardButton.disabled = controller.busy || !controller.canGoForward;
      menuButton.disabled = controller.busy;
      status.textContent = controller.busy
        ? "working..."
        : controller.lastError
          ? `error: ${controller.lastError}`
          : `${controller.state.expertise} / ${controller.state.task}`;
      if (!controller.busy && controller.state.current) {
        mountResponse(
          renderResponse(controller.state.current),
          controller,
          questions.questions,
          response,
        );
      }
    });

    status.textContent = `${expertise} / ${task} - pick a component`;
  } catch (err) {
    status.textContent = `cannot reach the service: ${err instanceof Error ? err.message : err}`;
  }
}

el<HTMLButtonElement>("connect").onclick = () => void boot();
