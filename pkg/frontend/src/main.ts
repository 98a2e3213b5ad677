import { ApiClient } from "./api.js";
import { wireApp } from "./app.js";

const client = new ApiClient("");
const app = wireApp(document, client);

// Populate the technology dropdown from the live catalog.
void client.technologies().then((catalog) => {
  const dropdown = document.getElementById("technology") as HTMLSelectElement | null;
  if (!dropdown) return;
  dropdown.replaceChildren(
    ...catalog.nodes.map((node) => {
      const option = document.createElement("option");
      option.value = node.id;
      option.textContent = `${node.id} (${node.node_nm} nm, ${node.foundry})`;
      return option;
    }),
  );
  dropdown.value = "tsmc65";
});

declare global {
  interface Window {
    fabdecide: typeof app;
  }
}
window.fabdecide = app;
