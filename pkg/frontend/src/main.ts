import { ApiClient } from "./api.js";
import { App } from "./app.js";

const root = document.querySelector("#app");
if (!(root instanceof HTMLElement)) {
  throw new Error("missing #app container");
}
void new App(new ApiClient(), root).start();
