import { Api } from './api';
import { App } from './app';
import './style.css';

const root = document.getElementById('app');
if (!root) throw new Error('missing #app mount point');

new App(root, new Api());
